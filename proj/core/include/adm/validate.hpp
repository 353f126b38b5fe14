#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adm/couplings.hpp"
#include "adm/hamiltonian.hpp"

namespace adm {

struct ScalingRow {
  std::string parameter;
  double value = 0.0;
  double horizon = 0.0;
  double deviation = 0.0;
};

/// Outcome of one reduction check: echoed inputs, deviation metrics, a
/// scaling table and the verdict against the configured thresholds.
struct ValidationReport {
  std::string kind;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, double>> thresholds;
  std::vector<ScalingRow> scaling;
  std::vector<std::string> notes;
  bool pass = false;

  double metric(const std::string& name) const;
};

struct SwOptions {
  int photon_cutoff = 2;
  int initial_photons = 1;  // start in |g...g, n>
  int samples = 400;
  double max_perturbation_ratio = 0.3;  // max(|Omega_i|) / min(|Delta_i|)
  double peak_intermediate_threshold = 5e-4;
  double overlap_threshold = 0.99;
  bool scaling = true;     // rerun with delta_1 -> 2 delta_1, delta_2 -> -2 delta_1
  int lab_periods = 200;   // pump periods for the lab-frame comparison; needs pump_freq > 0
  double v_int = 0.0;
  Boundary boundary = Boundary::Periodic;
};

/// Three-level rotating-frame dynamics versus the eliminated two-level model
/// over `horizon`, from |g...g, n> with the |m> component projected out.
/// Static problems (A = 0) are propagated exactly; otherwise RK4 is used.
ValidationReport validate_sw(const EngineeringParams& p, double horizon, const SwOptions& options = {});

struct FloquetOptions {
  int photon_cutoff = 3;
  int initial_photons = 1;
  int steps_per_period = 1000;
  bool scaling = true;  // rerun at 2 omega_s with A/omega_s and renormalized frequencies held fixed
  double scaling_ratio_threshold = 0.7;
  Boundary boundary = Boundary::Periodic;
};

/// Side-band frame propagation (RK4) against the time-averaged static model at
/// stroboscopic times t_k = 2 pi k / omega_s, k = 0..n_periods.
ValidationReport validate_floquet(const EngineeringParams& p, double v_int, int n_periods,
                                  const FloquetOptions& options = {});

}  // namespace adm
