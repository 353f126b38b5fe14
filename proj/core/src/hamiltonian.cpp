#include "adm/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace adm {

const char* to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

void validate(const ModelParams& p) {
  for (double v : {p.omega_c_tilde, p.omega_a_tilde, p.v_int, p.omega, p.alpha})
    if (!std::isfinite(v)) throw std::invalid_argument("ModelParams: non-finite field");
  if (p.v_int < 0.0) throw std::invalid_argument("ModelParams: v_int must be >= 0");
  if (p.alpha < 0.0 || p.alpha > 1.0) throw std::invalid_argument("ModelParams: alpha must lie in [0, 1]");
}

std::vector<std::pair<int, int>> chain_bonds(int n_sites, Boundary boundary) {
  std::set<std::pair<int, int>> bonds;
  const int last = boundary == Boundary::Periodic ? n_sites : n_sites - 1;
  for (int j = 0; j < last; ++j) {
    const int k = (j + 1) % n_sites;
    if (j == k) continue;
    bonds.insert({std::min(j, k), std::max(j, k)});
  }
  return {bonds.begin(), bonds.end()};
}

namespace {

using Entries = std::vector<SparseOperator::Entry>;

void add_symmetric(Entries& e, std::size_t row, std::size_t col, double v) {
  e.push_back({row, col, v});
  e.push_back({col, row, v});
}

// Entries of sum_j sigma^+_j a (photon_step = -1) or sum_j sigma^+_j a^dag (photon_step = +1).
Entries raising_entries(const CompositeBasis& basis, int photon_step) {
  Entries e;
  const int n_max = basis.photon_cutoff();
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto s = basis.state_of(i);
    const int n_new = s.photons + photon_step;
    if (n_new < 0 || n_new > n_max) continue;
    const double amp = std::sqrt(static_cast<double>(photon_step < 0 ? s.photons : s.photons + 1));
    for (int j = 0; j < basis.n_sites(); ++j) {
      if (site_excited(s.spins, j)) continue;
      const auto target = basis.index_of({s.spins | (std::uint64_t{1} << j), n_new});
      e.push_back({target, i, amp});
    }
  }
  return e;
}

SparseOperator symmetrized(const CompositeBasis& basis, const Entries& upper) {
  Entries e;
  e.reserve(2 * upper.size());
  for (const auto& x : upper) add_symmetric(e, x.row, x.col, x.value);
  return SparseOperator::from_entries(basis.dim(), std::move(e), true);
}

}  // namespace

SparseOperator rw_raising(const CompositeBasis& basis) {
  return SparseOperator::from_entries(basis.dim(), raising_entries(basis, -1), false);
}

SparseOperator crw_raising(const CompositeBasis& basis) {
  return SparseOperator::from_entries(basis.dim(), raising_entries(basis, +1), false);
}

TermSet build_adm_terms(const CompositeBasis& basis, Boundary boundary) {
  const auto bonds = chain_bonds(basis.n_sites(), boundary);
  std::vector<double> photons(basis.dim());
  std::vector<double> atoms(basis.dim());
  std::vector<double> pairs(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto s = basis.state_of(i);
    photons[i] = s.photons;
    atoms[i] = excited_count(s.spins);
    int count = 0;
    for (const auto& [a, b] : bonds) count += site_excited(s.spins, a) && site_excited(s.spins, b);
    pairs[i] = count;
  }
  return TermSet{basis,
                 boundary,
                 SparseOperator::diagonal(photons),
                 SparseOperator::diagonal(atoms),
                 SparseOperator::diagonal(pairs),
                 symmetrized(basis, raising_entries(basis, -1)),
                 symmetrized(basis, raising_entries(basis, +1))};
}

TermCoefficients term_coefficients(const ModelParams& p, int n_sites) {
  const double g = p.omega / std::sqrt(static_cast<double>(n_sites));
  return {p.omega_c_tilde, p.omega_a_tilde, p.v_int, (1.0 - p.alpha) * g, p.alpha * g};
}

SparseOperator assemble(const TermSet& terms, const TermCoefficients& c) {
  const SparseOperator* ops[] = {&terms.photon_energy, &terms.atom_number, &terms.rydberg, &terms.rw, &terms.crw};
  const double coeffs[] = {c.photon_energy, c.atom_number, c.rydberg, c.rw, c.crw};
  for (const auto* op : ops)
    if (op->dim() != terms.basis.dim()) throw std::invalid_argument("assemble: TermSet dimension mismatch");
  return linear_combination(ops, coeffs, true);
}

SparseOperator assemble(const TermSet& terms, const ModelParams& p) {
  validate(p);
  return assemble(terms, term_coefficients(p, terms.basis.n_sites()));
}

SparseOperator parity_operator(const CompositeBasis& basis) {
  std::vector<double> d(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) d[i] = sign_of(parity_of(basis.state_of(i), basis.n_sites()));
  return SparseOperator::diagonal(d);
}

SparseOperator excitation_operator(const CompositeBasis& basis) {
  std::vector<double> d(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const auto s = basis.state_of(i);
    d[i] = s.photons + excited_count(s.spins);
  }
  return SparseOperator::diagonal(d);
}

// --- TimeDependentHamiltonian -------------------------------------------------

void TimeDependentHamiltonian::add(std::string name, SparseOperator op, Coefficient coeff) {
  if (op.dim() != dim_)
    throw std::invalid_argument("TimeDependentHamiltonian: term '" + name + "' has dim " + std::to_string(op.dim()) +
                                ", expected " + std::to_string(dim_));
  const std::size_t k = terms_.size();
  if (op.is_diagonal()) {
    diagonal_terms_.push_back(k);
    diagonals_.push_back(op.diagonal_values());
  } else {
    offdiagonal_terms_.push_back(k);
  }
  terms_.push_back({std::move(name), std::move(op), std::move(coeff)});
}

void TimeDependentHamiltonian::add_with_conjugate(const std::string& name, const SparseOperator& op,
                                                  const Coefficient& coeff) {
  add(name, op, coeff);
  add(name + "^dag", op.transpose(), [coeff](double t) { return std::conj(coeff(t)); });
}

void TimeDependentHamiltonian::apply(double t, std::span<const cplx> x, std::span<cplx> out) const {
  std::fill(out.begin(), out.end(), cplx{});
  if (!diagonal_terms_.empty()) {
    cplx c[8];
    const std::size_t nd = diagonal_terms_.size();
    if (nd <= 8) {
      for (std::size_t d = 0; d < nd; ++d) c[d] = terms_[diagonal_terms_[d]].coeff(t);
      for (std::size_t i = 0; i < dim_; ++i) {
        cplx acc{};
        for (std::size_t d = 0; d < nd; ++d) acc += c[d] * diagonals_[d][i];
        out[i] = acc * x[i];
      }
    } else {
      for (std::size_t d = 0; d < nd; ++d) {
        const cplx cd = terms_[diagonal_terms_[d]].coeff(t);
        for (std::size_t i = 0; i < dim_; ++i) out[i] += cd * diagonals_[d][i] * x[i];
      }
    }
  }
  for (auto k : offdiagonal_terms_) {
    const cplx ck = terms_[k].coeff(t);
    if (ck != cplx{}) terms_[k].op.apply_add(x, ck, out);
  }
}

std::vector<cplx> TimeDependentHamiltonian::dense(double t) const {
  std::vector<cplx> h(dim_ * dim_);
  for (const auto& term : terms_) {
    const cplx c = term.coeff(t);
    for (const auto& e : term.op.entries()) h[e.row * dim_ + e.col] += c * e.value;
  }
  return h;
}

double TimeDependentHamiltonian::norm_bound(double t) const {
  double bound = 0.0;
  for (const auto& term : terms_) bound += std::abs(term.coeff(t)) * term.op.gershgorin_bound();
  return bound;
}

// --- Validation-oracle Hamiltonians -------------------------------------------

namespace {

struct ThreeLevelOps {
  SparseOperator cavity, intermediate, rydberg_level, rydberg_pairs, cavity_leg, laser_leg;
};

ThreeLevelOps three_level_ops(const ThreeLevelBasis& basis, Boundary boundary, std::size_t dim_cap) {
  if (basis.dim() > dim_cap)
    throw std::invalid_argument("three-level Hamiltonian: dim " + std::to_string(basis.dim()) + " exceeds cap " +
                                std::to_string(dim_cap));
  using L = ThreeLevelBasis::Level;
  const auto bonds = chain_bonds(basis.n_sites(), boundary);
  const int n_max = basis.photon_cutoff();
  std::vector<double> photons(basis.dim()), m_count(basis.dim()), e_count(basis.dim()), pairs(basis.dim());
  Entries cavity_leg, laser_leg;
  for (std::size_t c = 0; c < basis.configs(); ++c) {
    int nm = 0, ne = 0, np = 0;
    for (int j = 0; j < basis.n_sites(); ++j) {
      nm += basis.level(c, j) == L::Intermediate;
      ne += basis.level(c, j) == L::Rydberg;
    }
    for (const auto& [a, b] : bonds) np += basis.level(c, a) == L::Rydberg && basis.level(c, b) == L::Rydberg;
    for (int n = 0; n <= n_max; ++n) {
      const auto i = basis.index_of(c, n);
      photons[i] = n;
      m_count[i] = nm;
      e_count[i] = ne;
      pairs[i] = np;
      for (int j = 0; j < basis.n_sites(); ++j) {
        if (basis.level(c, j) == L::Ground) {
          const auto cm = basis.with_level(c, j, L::Intermediate);
          if (n >= 1) add_symmetric(cavity_leg, basis.index_of(cm, n - 1), i, std::sqrt(static_cast<double>(n)));
          if (n < n_max) add_symmetric(cavity_leg, basis.index_of(cm, n + 1), i, std::sqrt(n + 1.0));
        } else if (basis.level(c, j) == L::Rydberg) {
          add_symmetric(laser_leg, basis.index_of(basis.with_level(c, j, L::Intermediate), n), i, 1.0);
        }
      }
    }
  }
  return {SparseOperator::diagonal(photons),
          SparseOperator::diagonal(m_count),
          SparseOperator::diagonal(e_count),
          SparseOperator::diagonal(pairs),
          SparseOperator::from_entries(basis.dim(), std::move(cavity_leg), true),
          SparseOperator::from_entries(basis.dim(), std::move(laser_leg), true)};
}

TimeDependentHamiltonian::Coefficient constant(double v) {
  return [v](double) { return cplx(v); };
}

TimeDependentHamiltonian three_level_common(const EngineeringParams& p, double v_int, const ThreeLevelBasis& basis,
                                            Boundary boundary, std::size_t dim_cap, double rydberg_energy,
                                            TimeDependentHamiltonian::Coefficient laser) {
  validate(p);
  auto ops = three_level_ops(basis, boundary, dim_cap);
  const double root_n = std::sqrt(static_cast<double>(basis.n_sites()));
  const double amp = p.drive_amp;
  const double ws = p.drive_freq;
  TimeDependentHamiltonian h(basis.dim());
  h.add("cavity", std::move(ops.cavity), constant(p.omega_c_bare));
  h.add("intermediate", std::move(ops.intermediate), constant(p.intermediate_frequency()));
  h.add("rydberg_level", std::move(ops.rydberg_level),
        [rydberg_energy, amp, ws](double t) { return cplx(rydberg_energy + amp * std::cos(ws * t)); });
  h.add("rydberg_pairs", std::move(ops.rydberg_pairs), constant(v_int));
  h.add("cavity_leg", std::move(ops.cavity_leg), constant(p.omega_1 / root_n));
  h.add("laser_leg", std::move(ops.laser_leg),
        [laser = std::move(laser), root_n](double t) { return laser(t) / root_n; });
  return h;
}

}  // namespace

TimeDependentHamiltonian build_three_level(const EngineeringParams& p, double v_int, const ThreeLevelBasis& basis,
                                           Boundary boundary, std::size_t dim_cap) {
  // omega_2 = delta_2 + omega_p, so |e> sits at omega_1 + omega_2.
  const double e_energy = p.intermediate_frequency() + p.delta_2 + p.pump_freq;
  const double w2 = p.omega_2;
  const double wp = p.pump_freq;
  return three_level_common(p, v_int, basis, boundary, dim_cap, e_energy,
                            [w2, wp](double t) { return cplx(w2 * std::cos(wp * t)); });
}

TimeDependentHamiltonian build_three_level_rotating(const EngineeringParams& p, double v_int,
                                                    const ThreeLevelBasis& basis, Boundary boundary,
                                                    std::size_t dim_cap) {
  return three_level_common(p, v_int, basis, boundary, dim_cap, p.rotating_atomic_frequency(), constant(p.omega_2));
}

TimeDependentHamiltonian build_eliminated(const EngineeringParams& p, double v_int, const EffectiveCouplings& e,
                                          const CompositeBasis& basis, Boundary boundary) {
  auto terms = build_adm_terms(basis, boundary);
  const double root_n = std::sqrt(static_cast<double>(basis.n_sites()));
  const double wa = p.omega_a_bare;
  const double amp = p.drive_amp;
  const double ws = p.drive_freq;
  TimeDependentHamiltonian h(basis.dim());
  h.add("photon_energy", std::move(terms.photon_energy), constant(p.omega_c_bare));
  h.add("atom_number", std::move(terms.atom_number),
        [wa, amp, ws](double t) { return cplx(wa + amp * std::cos(ws * t)); });
  h.add("rydberg", std::move(terms.rydberg), constant(v_int));
  h.add("rw", std::move(terms.rw), constant(e.rw / root_n));
  h.add("crw", std::move(terms.crw), constant(e.crw / root_n));
  return h;
}

TimeDependentHamiltonian build_floquet_frame(const EngineeringParams& p, double v_int, const EffectiveCouplings& e,
                                             const CompositeBasis& basis, Boundary boundary) {
  validate(p);
  auto terms = build_adm_terms(basis, boundary);
  const auto freqs = renormalized_frequencies(p);
  const double root_n = std::sqrt(static_cast<double>(basis.n_sites()));
  const double k = p.drive_ratio();
  const double ws = p.drive_freq;
  const double side = 2.0 * p.sideband * ws;
  const double g_rw = e.rw / root_n;
  const double g_crw = e.crw / root_n;
  TimeDependentHamiltonian h(basis.dim());
  h.add("photon_energy", std::move(terms.photon_energy), constant(freqs.cavity));
  h.add("atom_number", std::move(terms.atom_number), constant(freqs.atom));
  h.add("rydberg", std::move(terms.rydberg), constant(v_int));
  h.add_with_conjugate("rw", rw_raising(basis),
                       [g_rw, k, ws](double t) { return g_rw * std::exp(cplx(0.0, k * std::sin(ws * t))); });
  h.add_with_conjugate("crw", crw_raising(basis), [g_crw, k, ws, side](double t) {
    return g_crw * std::exp(cplx(0.0, k * std::sin(ws * t) + side * t));
  });
  return h;
}

SparseOperator build_floquet_average(const EngineeringParams& p, double v_int, const EffectiveCouplings& e,
                                     const TermSet& terms) {
  auto ep = p;
  ep.n_sites = terms.basis.n_sites();
  const auto fc = floquet_couplings(ep, e);
  const auto freqs = renormalized_frequencies(p);
  return assemble(terms, TermCoefficients{freqs.cavity, freqs.atom, v_int, fc.rw, fc.crw});
}

}  // namespace adm
