#include "adm/spectra.hpp"

#include "adm/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace adm {

namespace {

void fix_sign(double* v, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (v[best] < 0.0)
    for (std::size_t i = 0; i < n; ++i) v[i] = -v[i];
}

// Lowest `k` eigenpairs of a dense symmetric n x n matrix (column-major, overwritten).
// Householder reduction in Eigen, tridiagonal solve in LAPACK.
void lowest_eigenpairs(std::vector<double>& a, std::size_t n, int k, bool with_vectors, std::vector<double>& values,
                       std::vector<double>& vectors) {
  const auto ln = static_cast<lapack_int>(n);
  Eigen::Map<Eigen::MatrixXd> matrix(a.data(), ln, ln);
  Eigen::Tridiagonalization<Eigen::MatrixXd> tri(matrix);
  const Eigen::VectorXd d = tri.diagonal();
  const Eigen::VectorXd e = tri.subDiagonal();
  std::vector<double> diag(d.begin(), d.end());
  std::vector<double> off(n, 0.0);
  std::copy(e.begin(), e.end(), off.begin());

  lapack_int found = 0;
  values.assign(n, 0.0);
  std::vector<double> z(with_vectors ? n * static_cast<std::size_t>(k) : 1, 0.0);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max(k, 1)));
  const int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'I', ln, diag.data(), off.data(), 0.0,
                                  0.0, 1, k, 0.0, &found, values.data(), z.data(), with_vectors ? ln : 1,
                                  support.data());
  if (info != 0 || found != k) throw NumericError("dstevr failed with info " + std::to_string(info));
  values.resize(static_cast<std::size_t>(k));
  if (!with_vectors) return;
  Eigen::Map<Eigen::MatrixXd> out(z.data(), ln, k);
  tri.matrixQ().applyThisOnTheLeft(out);
  vectors = std::move(z);
}

}  // namespace

std::vector<double> EigenSolution::embed(std::size_t level, std::size_t dim) const {
  if (level >= eigenvectors.size()) throw std::out_of_range("EigenSolution::embed: level without eigenvector");
  std::vector<double> full(dim, 0.0);
  for (std::size_t s = 0; s < sector.size(); ++s) full[sector[s]] = eigenvectors[level][s];
  return full;
}

std::vector<cplx> EigenSolution::embed_complex(std::size_t level, std::size_t dim) const {
  const auto real = embed(level, dim);
  return {real.begin(), real.end()};
}

void dense_symmetric_eigensolve(std::vector<double> matrix, std::size_t n, std::vector<double>& values,
                                std::vector<double>& vectors_col_major) {
  if (matrix.size() != n * n) throw std::invalid_argument("dense_symmetric_eigensolve: size mismatch");
  lowest_eigenpairs(matrix, n, static_cast<int>(n), true, values, vectors_col_major);
}

EigenSolution eigenpairs_in_sector(const SparseOperator& h, const CompositeBasis& basis, Parity parity, int k,
                                   bool with_vectors) {
  if (h.dim() != basis.dim())
    throw std::invalid_argument("eigenpairs_in_sector: operator dim " + std::to_string(h.dim()) +
                                " does not match basis dim " + std::to_string(basis.dim()));
  if (h.max_asymmetry() > 1e-12 * std::max(1.0, h.max_abs()))
    throw std::invalid_argument("eigenpairs_in_sector: operator is not Hermitian");

  EigenSolution sol;
  sol.parity = parity;
  sol.sector = sector_indices(basis, parity);
  const std::size_t n = sol.sector.size();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw std::invalid_argument("eigenpairs_in_sector: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) +
                                "]");

  constexpr auto absent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> position(basis.dim(), absent);
  for (std::size_t s = 0; s < n; ++s) position[sol.sector[s]] = s;

  std::vector<double> dense(n * n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    const auto cols = h.row_cols(sol.sector[s]);
    const auto vals = h.row_values(sol.sector[s]);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      const auto p = position[cols[q]];
      if (p == absent) throw std::invalid_argument("eigenpairs_in_sector: operator couples the parity sectors");
      dense[p * n + s] = vals[q];
    }
  }

  std::vector<double> vectors;
  lowest_eigenpairs(dense, n, k, with_vectors, sol.eigenvalues, vectors);
  if (with_vectors) {
    sol.eigenvectors.resize(static_cast<std::size_t>(k));
    for (int l = 0; l < k; ++l) {
      double* v = vectors.data() + static_cast<std::size_t>(l) * n;
      fix_sign(v, n);
      sol.eigenvectors[l].assign(v, v + n);
    }
    const double tol = 1e-8 * std::max(1.0, h.gershgorin_bound());
    std::vector<double> hv(basis.dim());
    for (int l = 0; l < k; ++l) {
      const auto v = sol.embed(static_cast<std::size_t>(l), basis.dim());
      std::fill(hv.begin(), hv.end(), 0.0);
      h.apply_add(v, 1.0, hv);
      double residual = 0.0;
      for (std::size_t i = 0; i < hv.size(); ++i)
        residual = std::max(residual, std::abs(hv[i] - sol.eigenvalues[l] * v[i]));
      if (residual > tol)
        throw NumericError("eigenpairs_in_sector: eigenvector residual " + std::to_string(residual) +
                           " exceeds " + std::to_string(tol));
    }
  }
  return sol;
}

const char* to_string(Control c) { return c == Control::Coupling ? "omega" : "omega_a_tilde"; }

ModelParams ControlGrid::at(double value) const {
  ModelParams p = base;
  if (control == Control::Coupling)
    p.omega = value;
  else
    p.omega_a_tilde = value;
  return p;
}

ControlGrid ControlGrid::linspace(Control control, const ModelParams& base, double start, double stop,
                                  std::size_t points) {
  if (points == 0) throw std::invalid_argument("ControlGrid::linspace: need at least one point");
  ControlGrid g{control, base, {}};
  g.values.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    g.values[i] = start * (1.0 - s) + stop * s;
  }
  return g;
}

unsigned worker_count() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ADM_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

namespace {

bool monotone(const std::vector<double>& v) {
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    up = up && v[i] > v[i - 1];
    down = down && v[i] < v[i - 1];
  }
  return up || down;
}

template <class Fn>
void parallel_points(std::size_t count, unsigned threads, Fn&& body) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t g = next++; g < count && !failed; g = next++) {
      try {
        body(g);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  const unsigned n_workers =
      std::max(1U, std::min<unsigned>(threads ? threads : worker_count(), static_cast<unsigned>(count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);
}

struct PointSolution {
  EigenSolution even;
  EigenSolution odd;
};

double overlap(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return std::abs(s);
}

void track_sector(std::vector<PointSolution>& points, Parity parity, std::vector<std::vector<FlowLevel>>& out,
                  std::vector<TrackingFlag>& flags) {
  auto pick = [parity](PointSolution& p) -> EigenSolution& { return parity == Parity::Even ? p.even : p.odd; };
  out.resize(points.size());
  for (std::size_t g = 0; g < points.size(); ++g) {
    const auto& cur = pick(points[g]);
    const int k = static_cast<int>(cur.eigenvalues.size());
    out[g].resize(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) out[g][r] = {cur.eigenvalues[r], r, r, 1.0};
    if (g == 0) continue;

    const auto& prev = pick(points[g - 1]);
    struct Candidate {
      double value;
      int from;
      int to;
    };
    std::vector<Candidate> candidates;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) candidates.push_back({overlap(prev.eigenvectors[a], cur.eigenvectors[b]), a, b});
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
    std::vector<bool> used_from(k, false), used_to(k, false);
    for (const auto& c : candidates) {
      if (used_from[c.from] || used_to[c.to]) continue;
      used_from[c.from] = used_to[c.to] = true;
      out[g][c.to].track = out[g - 1][c.from].track;
      out[g][c.to].overlap = c.value;
      if (c.value < 0.5) flags.push_back({g, parity, c.to, c.value});
    }
  }
}

}  // namespace

SpectralFlow spectral_flow(const TermSet& terms, const ControlGrid& grid, int levels_k, unsigned threads) {
  if (grid.values.empty()) throw std::invalid_argument("spectral_flow: empty control grid");
  if (!monotone(grid.values)) throw std::invalid_argument("spectral_flow: control grid must be strictly monotone");
  if (levels_k < 1) throw std::invalid_argument("spectral_flow: levels_k must be >= 1");
  const auto& basis = terms.basis;
  const int k_even = std::min<int>(levels_k, static_cast<int>(sector_indices(basis, Parity::Even).size()));
  const int k_odd = std::min<int>(levels_k, static_cast<int>(sector_indices(basis, Parity::Odd).size()));

  std::vector<PointSolution> points(grid.values.size());
  parallel_points(points.size(), threads, [&](std::size_t g) {
    const auto h = assemble(terms, grid.at(grid.values[g]));
    points[g].even = eigenpairs_in_sector(h, basis, Parity::Even, k_even);
    points[g].odd = eigenpairs_in_sector(h, basis, Parity::Odd, k_odd);
  });

  SpectralFlow flow;
  flow.grid = grid;
  flow.levels_k = levels_k;
  track_sector(points, Parity::Even, flow.even, flow.discontinuities);
  track_sector(points, Parity::Odd, flow.odd, flow.discontinuities);
  return flow;
}

namespace {

void check_pair(std::pair<int, int> pair, std::size_t available) {
  if (pair.first < 0 || pair.second <= pair.first || static_cast<std::size_t>(pair.second) >= available)
    throw std::invalid_argument("gap: level pair outside the available levels");
}

}  // namespace

GapProfile gap_profile(const SpectralFlow& flow, Parity parity, std::pair<int, int> level_pair) {
  const auto& s = flow.sector(parity);
  if (s.empty()) throw std::invalid_argument("gap_profile: empty flow");
  check_pair(level_pair, s.front().size());
  GapProfile out{flow.grid, parity, level_pair, {}};
  out.gaps.reserve(s.size());
  for (const auto& levels : s) out.gaps.push_back(levels[level_pair.second].energy - levels[level_pair.first].energy);
  return out;
}

GapProfile gap_scan(const TermSet& terms, const ControlGrid& grid, Parity parity, std::pair<int, int> level_pair,
                    unsigned threads) {
  if (grid.values.empty()) throw std::invalid_argument("gap_scan: empty control grid");
  check_pair(level_pair, sector_indices(terms.basis, parity).size());
  GapProfile out{grid, parity, level_pair, std::vector<double>(grid.values.size())};
  parallel_points(grid.values.size(), threads, [&](std::size_t g) {
    const auto h = assemble(terms, grid.at(grid.values[g]));
    const auto sol = eigenpairs_in_sector(h, terms.basis, parity, level_pair.second + 1, false);
    out.gaps[g] = sol.eigenvalues[level_pair.second] - sol.eigenvalues[level_pair.first];
  });
  return out;
}

GapResult min_gap(const GapProfile& profile) {
  if (profile.gaps.empty()) throw std::invalid_argument("min_gap: empty profile");
  GapResult best{profile.grid.values[0], profile.gaps[0], 0, false};
  for (std::size_t g = 1; g < profile.gaps.size(); ++g)
    if (profile.gaps[g] < best.gap) best = {profile.grid.values[g], profile.gaps[g], g, false};
  return best;
}

GapResult min_gap(const SpectralFlow& flow, Parity parity, std::pair<int, int> level_pair) {
  return min_gap(gap_profile(flow, parity, level_pair));
}

std::vector<GapResult> gap_local_minima(const GapProfile& profile) {
  const auto& gaps = profile.gaps;
  std::vector<GapResult> out;
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    const bool left = g == 0 || gaps[g] <= gaps[g - 1];
    const bool right = g + 1 == gaps.size() || gaps[g] <= gaps[g + 1];
    if (left && right) out.push_back({profile.grid.values[g], gaps[g], g, false});
  }
  std::sort(out.begin(), out.end(), [](const GapResult& a, const GapResult& b) { return a.gap < b.gap; });
  return out;
}

std::vector<GapResult> gap_local_minima(const SpectralFlow& flow, Parity parity, std::pair<int, int> level_pair) {
  return gap_local_minima(gap_profile(flow, parity, level_pair));
}

GapResult refine_gap(const TermSet& terms, const ControlGrid& grid, Parity parity, std::pair<int, int> level_pair,
                     const GapResult& coarse, double tolerance, int max_iterations) {
  const auto& v = grid.values;
  if (v.size() < 2) return coarse;
  const std::size_t g = coarse.grid_index;
  double lo = v[g == 0 ? 0 : g - 1];
  double hi = v[std::min(g + 1, v.size() - 1)];
  if (lo > hi) std::swap(lo, hi);

  auto gap_at = [&](double c) {
    const auto h = assemble(terms, grid.at(c));
    const auto sol = eigenpairs_in_sector(h, terms.basis, parity, level_pair.second + 1, false);
    return sol.eigenvalues[level_pair.second] - sol.eigenvalues[level_pair.first];
  };

  GapResult best = coarse;
  best.refined = true;
  auto consider = [&](double c, double gap) {
    if (gap < best.gap) {
      best.gap = gap;
      best.control = c;
    }
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = gap_at(x1);
  double f2 = gap_at(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < max_iterations; ++it) {
    if (hi - lo < tolerance * std::max(1.0, std::abs(best.control)) || best.gap < 1e-10) break;
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = gap_at(x1);
      consider(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = gap_at(x2);
      consider(x2, f2);
    }
  }
  return best;
}

GapResult refined_min_gap(const TermSet& terms, const GapProfile& profile, int candidates) {
  auto minima = gap_local_minima(profile);
  if (minima.size() > static_cast<std::size_t>(std::max(candidates, 1))) minima.resize(std::max(candidates, 1));
  GapResult best = min_gap(profile);
  for (const auto& m : minima) {
    const auto r = refine_gap(terms, profile.grid, profile.parity, profile.level_pair, m);
    if (!best.refined || r.gap < best.gap) best = r;
  }
  return best;
}

GapResult refined_min_gap(const TermSet& terms, const SpectralFlow& flow, Parity parity,
                          std::pair<int, int> level_pair, int candidates) {
  return refined_min_gap(terms, gap_profile(flow, parity, level_pair), candidates);
}

bool is_crossing(double refined_gap, double width) { return refined_gap < 1e-6 * width; }

double spectral_width(const TermSet& terms, const ModelParams& params) {
  const auto h = assemble(terms, params);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t r = 0; r < h.dim(); ++r) {
    double diag = 0.0;
    double radius = 0.0;
    const auto cols = h.row_cols(r);
    const auto vals = h.row_values(r);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      if (cols[q] == r)
        diag = vals[q];
      else
        radius += std::abs(vals[q]);
    }
    lo = std::min(lo, diag - radius);
    hi = std::max(hi, diag + radius);
  }
  return hi - lo;
}

}  // namespace adm
