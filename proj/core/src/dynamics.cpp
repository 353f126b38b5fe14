#include "adm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "adm/errors.hpp"
#include "adm/spectra.hpp"

namespace adm {

Rk4Integrator::Rk4Integrator(std::size_t dim) : k_(dim), acc_(dim), probe_(dim) {}

double Rk4Integrator::step(const TimeDependentHamiltonian& h, std::span<cplx> psi, double t, double dt) {
  const std::size_t n = psi.size();
  const cplx minus_i(0.0, -1.0);
  // Stage k_s = -i H(t_s) probe_s; acc collects sum w_s k_s.
  h.apply(t, psi, k_);
  for (std::size_t i = 0; i < n; ++i) {
    k_[i] *= minus_i;
    acc_[i] = k_[i];
    probe_[i] = psi[i] + 0.5 * dt * k_[i];
  }
  h.apply(t + 0.5 * dt, probe_, k_);
  for (std::size_t i = 0; i < n; ++i) {
    k_[i] *= minus_i;
    acc_[i] += 2.0 * k_[i];
    probe_[i] = psi[i] + 0.5 * dt * k_[i];
  }
  h.apply(t + 0.5 * dt, probe_, k_);
  for (std::size_t i = 0; i < n; ++i) {
    k_[i] *= minus_i;
    acc_[i] += 2.0 * k_[i];
    probe_[i] = psi[i] + dt * k_[i];
  }
  h.apply(t + dt, probe_, k_);
  double norm2 = 0.0;
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    psi[i] += w * (acc_[i] + minus_i * k_[i]);
    norm2 += std::norm(psi[i]);
  }
  if (!std::isfinite(norm2)) {
    std::ostringstream msg;
    msg << "RK4 produced non-finite amplitudes at t=" << t << " (dt=" << dt << ")";
    throw NumericError(msg.str());
  }
  return norm2;
}

StateVector rk4_step(const TimeDependentHamiltonian& h, const StateVector& psi, double t, double dt) {
  if (h.dim() != psi.dim()) throw std::invalid_argument("rk4_step: Hamiltonian and state dimensions differ");
  StateVector out = psi;
  Rk4Integrator(psi.dim()).step(h, out.amplitudes(), t, dt);
  return out;
}

SpectralPropagator::SpectralPropagator(const SparseOperator& h) : dim_(h.dim()) {
  if (h.max_asymmetry() > 1e-12 * std::max(1.0, h.max_abs()))
    throw std::invalid_argument("SpectralPropagator: operator is not symmetric");
  dense_symmetric_eigensolve(h.to_dense(), dim_, values_, vectors_);
}

std::vector<cplx> SpectralPropagator::evolve(std::span<const cplx> psi0, double t) const {
  if (psi0.size() != dim_) throw std::invalid_argument("SpectralPropagator: state dimension mismatch");
  std::vector<cplx> coeff(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    const double* v = vectors_.data() + k * dim_;
    cplx c{};
    for (std::size_t i = 0; i < dim_; ++i) c += v[i] * psi0[i];
    coeff[k] = c * std::polar(1.0, -values_[k] * t);
  }
  std::vector<cplx> out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    const double* v = vectors_.data() + k * dim_;
    for (std::size_t i = 0; i < dim_; ++i) out[i] += v[i] * coeff[k];
  }
  return out;
}

const char* to_string(SweepKind k) { return k == SweepKind::SR ? "SR" : "SRS"; }

ModelParams SweepProtocol::params_at(const ModelParams& base, double t) const {
  ModelParams p = base;
  if (kind == SweepKind::SR)
    p.omega = control_at(t);
  else
    p.omega_a_tilde = control_at(t);
  return p;
}

double SweepProtocol::control_at(double t) const {
  const double s = t / duration;
  if (kind == SweepKind::SR) return omega_final * s;
  return omega_a_start * (1.0 - s) + omega_a_end * s;
}

TimeDependentHamiltonian sweep_hamiltonian(const TermSet& terms, const SweepProtocol& protocol,
                                           const ModelParams& base) {
  validate(base);
  if (!(protocol.duration > 0.0)) throw std::invalid_argument("sweep: duration must be > 0");
  const int n = terms.basis.n_sites();
  TimeDependentHamiltonian h(terms.basis.dim());
  auto coeff = [protocol, base, n](auto field) {
    return [protocol, base, n, field](double t) {
      return cplx(field(term_coefficients(protocol.params_at(base, t), n)));
    };
  };
  h.add("photon_energy", terms.photon_energy, coeff([](const TermCoefficients& c) { return c.photon_energy; }));
  h.add("atom_number", terms.atom_number, coeff([](const TermCoefficients& c) { return c.atom_number; }));
  h.add("rydberg", terms.rydberg, coeff([](const TermCoefficients& c) { return c.rydberg; }));
  h.add("rw", terms.rw, coeff([](const TermCoefficients& c) { return c.rw; }));
  h.add("crw", terms.crw, coeff([](const TermCoefficients& c) { return c.crw; }));
  return h;
}

StateVector ground_state_initial(const TermSet& terms, const ModelParams& params) {
  const auto h = assemble(terms, params);
  const auto n_even = sector_indices(terms.basis, Parity::Even).size();
  const int k = n_even >= 2 ? 2 : 1;
  const auto sol = eigenpairs_in_sector(h, terms.basis, Parity::Even, k);
  if (k == 2 && sol.eigenvalues[1] - sol.eigenvalues[0] < 1e-9 * std::max(1.0, std::abs(sol.eigenvalues[0]))) {
    std::ostringstream msg;
    msg << "even-parity ground state is degenerate at the sweep start (E0=" << sol.eigenvalues[0]
        << ", E1=" << sol.eigenvalues[1] << "); shift the protocol start away from the degeneracy";
    throw NumericError(msg.str());
  }
  return StateVector(terms.basis, sol.embed_complex(0, terms.basis.dim()));
}

SweepResult run_sweep(const TermSet& terms, const SweepProtocol& protocol, const StateVector& initial,
                      const ModelParams& params) {
  if (!(initial.basis() == terms.basis)) throw std::invalid_argument("run_sweep: initial state basis mismatch");
  if (std::abs(initial.norm() - 1.0) > 1e-8) throw std::invalid_argument("run_sweep: initial state not normalised");
  const auto h = sweep_hamiltonian(terms, protocol, params);
  const double T = protocol.duration;

  SweepResult result(initial);
  result.norm_bound = std::max(h.norm_bound(0.0), h.norm_bound(T));
  double dt = protocol.dt;
  if (dt <= 0.0) {
    dt = kStabilityLimit / result.norm_bound;
  } else if (dt * result.norm_bound > kStabilityLimit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "run_sweep: dt=" << dt << " violates the stability guard dt*||H|| <= " << kStabilityLimit
        << " (||H|| bound " << result.norm_bound << ")";
    throw std::invalid_argument(msg.str());
  }
  result.steps = std::max(1L, static_cast<long>(std::ceil(T / dt - 1e-9)));
  result.dt = T / static_cast<double>(result.steps);
  const long count = std::max(1, protocol.sample_count);
  long sample_index = 1;
  auto due = [&](long step) {
    if (step == result.steps) return true;
    if (protocol.sample_stride > 0) return step % protocol.sample_stride == 0;
    if (step * count < sample_index * result.steps) return false;
    while (step * count >= sample_index * result.steps) ++sample_index;
    return true;
  };

  auto& psi = result.final_state;
  const double parity0 = parity_expect(initial);
  auto sample = [&](double t) {
    const auto p = protocol.params_at(params, t);
    const auto target = eigenpairs_in_sector(assemble(terms, p), terms.basis, Parity::Even, 1);
    const auto ref = target.embed_complex(0, terms.basis.dim());
    ObservableRecord r;
    r.t = t;
    r.control = protocol.control_at(t);
    r.fidelity = fidelity(psi.amplitudes(), ref);
    r.photon_number = photon_number(psi);
    r.structure_factor = structure_factor(psi, M_PI);
    r.parity_expect = parity_expect(psi);
    r.norm = psi.norm();
    result.max_parity_drift = std::max(result.max_parity_drift, std::abs(r.parity_expect - parity0));
    result.max_fock_tail = std::max(result.max_fock_tail, fock_tail(psi, 2));
    result.records.push_back(r);
  };

  Rk4Integrator rk4(psi.dim());
  sample(0.0);
  for (long s = 0; s < result.steps; ++s) {
    const double t = s * result.dt;
    const double norm2 = rk4.step(h, psi.amplitudes(), t, result.dt);
    result.max_norm_drift = std::max(result.max_norm_drift, std::abs(std::sqrt(norm2) - 1.0));
    if (due(s + 1)) sample((s + 1) == result.steps ? T : (s + 1) * result.dt);
  }
  if (result.max_fock_tail > 1e-6) {
    std::ostringstream msg;
    msg << "photon cutoff tail: weight " << result.max_fock_tail << " on the top two Fock levels exceeds 1e-6";
    result.warnings.push_back(msg.str());
  }
  return result;
}

DurationStudy select_duration(const TermSet& terms, const SweepProtocol& protocol, const StateVector& initial,
                              const ModelParams& params, double initial_duration, double tolerance,
                              double max_duration) {
  if (!(initial_duration > 0.0)) throw std::invalid_argument("select_duration: initial duration must be > 0");
  DurationStudy study;
  auto probe = protocol;
  probe.sample_count = 1;
  probe.sample_stride = 0;
  double previous = -1.0;
  for (double T = initial_duration; T <= max_duration * (1.0 + 1e-12); T *= 2.0) {
    probe.duration = T;
    const auto run = run_sweep(terms, probe, initial, params);
    const double f = run.records.back().fidelity;
    study.trace.emplace_back(T, f);
    study.duration = T;
    if (previous >= 0.0 && std::abs(f - previous) < tolerance) {
      study.converged = true;
      break;
    }
    previous = f;
  }
  return study;
}

}  // namespace adm
