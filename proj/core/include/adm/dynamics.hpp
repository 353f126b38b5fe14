#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adm/hamiltonian.hpp"
#include "adm/observables.hpp"

namespace adm {

/// Classical fourth-order Runge-Kutta for i d(psi)/dt = H(t) psi with
/// preallocated stage buffers. The state is not renormalised.
class Rk4Integrator {
 public:
  explicit Rk4Integrator(std::size_t dim);

  /// Advances psi in place from t to t + dt and returns the new squared norm.
  /// Throws NumericError when an amplitude becomes non-finite.
  double step(const TimeDependentHamiltonian& h, std::span<cplx> psi, double t, double dt);

 private:
  std::vector<cplx> k_, acc_, probe_;
};

StateVector rk4_step(const TimeDependentHamiltonian& h, const StateVector& psi, double t, double dt);

/// exp(-i H t) for a static real symmetric H through one dense eigendecomposition.
/// Exactly unitary up to rounding; used as the reference propagator for static models.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const SparseOperator& h);

  std::size_t dim() const { return dim_; }
  std::vector<cplx> evolve(std::span<const cplx> psi0, double t) const;
  const std::vector<double>& eigenvalues() const { return values_; }

 private:
  std::size_t dim_;
  std::vector<double> values_;
  std::vector<double> vectors_;  // column-major
};

/// Maximum dt * ||H|| accepted by run_sweep.
inline constexpr double kStabilityLimit = 0.1;

enum class SweepKind { SR, SRS };

const char* to_string(SweepKind k);

/// SR: Omega(t) = omega_final * t / T with the other parameters fixed.
/// SRS: omega_a_tilde(t) linear from omega_a_start to omega_a_end at fixed Omega.
struct SweepProtocol {
  SweepKind kind = SweepKind::SR;
  double duration = 100.0;
  double dt = 0.0;  // 0: 0.1 / ||H|| bound
  double omega_final = 1.5;
  double omega_a_start = 0.5;
  double omega_a_end = -0.1;
  int sample_count = 200;  // ED refresh points over the sweep (endpoints always sampled)
  int sample_stride = 0;   // explicit stride in steps; overrides sample_count when > 0

  ModelParams params_at(const ModelParams& base, double t) const;
  double control_at(double t) const;
};

TimeDependentHamiltonian sweep_hamiltonian(const TermSet& terms, const SweepProtocol& protocol,
                                           const ModelParams& base);

struct ObservableRecord {
  double t = 0.0;
  double control = 0.0;
  double fidelity = 0.0;
  double photon_number = 0.0;
  double structure_factor = 0.0;
  double parity_expect = 0.0;
  double norm = 0.0;
};

struct SweepResult {
  explicit SweepResult(StateVector initial) : final_state(std::move(initial)) {}

  std::vector<ObservableRecord> records;
  double dt = 0.0;
  long steps = 0;
  double norm_bound = 0.0;
  double max_norm_drift = 0.0;    // max over every step of | ||psi|| - 1 |
  double max_parity_drift = 0.0;  // over sample times
  double max_fock_tail = 0.0;     // weight on the top two Fock levels, over sample times
  std::vector<std::string> warnings;
  StateVector final_state;
};

/// Fidelity is taken against the lowest even-parity eigenstate of H(t) at sample times.
SweepResult run_sweep(const TermSet& terms, const SweepProtocol& protocol, const StateVector& initial,
                      const ModelParams& params);

/// Lowest even-parity eigenvector of the model at `params`.
/// Throws NumericError when that level is degenerate within the even sector.
StateVector ground_state_initial(const TermSet& terms, const ModelParams& params);

struct DurationStudy {
  double duration = 0.0;
  bool converged = false;
  std::vector<std::pair<double, double>> trace;  // (T, final fidelity)
};

/// Doubles T from `initial_duration` until the final fidelity moves by less
/// than `tolerance`, stopping at `max_duration`.
DurationStudy select_duration(const TermSet& terms, const SweepProtocol& protocol, const StateVector& initial,
                              const ModelParams& params, double initial_duration = 10.0, double tolerance = 0.005,
                              double max_duration = 5120.0);

}  // namespace adm
