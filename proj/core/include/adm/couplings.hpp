#pragma once

namespace adm {

/// Upstream physical parameters of the driven three-level scheme.
///
/// Energies share one unit (hbar = 1). The intermediate-level frequency is
/// derived as omega_1 = omega_c_bare + delta_1.
struct EngineeringParams {
  double omega_1 = 1.0;       // cavity-leg two-photon coupling
  double omega_2 = 1.0;       // classical-laser Rabi frequency
  double delta_1 = 10.0;      // omega_1 - omega_C
  double delta_2 = -10.0;     // omega_2 - omega_p
  double drive_amp = 0.0;     // microwave modulation amplitude A
  double drive_freq = 1.0;    // modulation angular frequency omega_s
  int sideband = 1;           // resolved side-band index n_t
  double omega_c_bare = 1.0;  // cavity frequency omega_C
  double omega_a_bare = 1.0;  // atomic frequency omega_A = omega_1 + delta_2
  double pump_freq = 0.0;     // classical-laser frequency omega_p (lab-frame oracle only)
  int n_sites = 1;

  double drive_ratio() const { return drive_amp / drive_freq; }
  double intermediate_frequency() const { return omega_c_bare + delta_1; }
  double rotating_atomic_frequency() const { return intermediate_frequency() + delta_2; }
};

/// Checks the invariants of EngineeringParams; throws std::invalid_argument.
void validate(const EngineeringParams& p);

/// Bessel function of the first kind J_order(x) for order >= 0.
/// Ascending series in extended precision for |x| <= 15, Miller's downward
/// recurrence normalised by J_0 + 2 sum J_2k = 1 above. Throws on non-finite x.
double bessel_j(int order, double x);

/// Second-order couplings after eliminating the intermediate level:
/// rw multiplies a sigma^+, crw multiplies a^dag sigma^+.
struct EffectiveCouplings {
  double rw = 0.0;   // Omega_e1
  double crw = 0.0;  // Omega_e2
};

EffectiveCouplings effective_couplings(const EngineeringParams& p);

/// Lowest-order Floquet couplings, already carrying the 1/sqrt(N) factor.
struct FloquetCouplings {
  double rw = 0.0;   // Omega_e3
  double crw = 0.0;  // Omega_e4
};

FloquetCouplings floquet_couplings(const EngineeringParams& p, const EffectiveCouplings& e);

struct RenormalizedFrequencies {
  double cavity = 0.0;  // omega_C - n_t omega_s
  double atom = 0.0;    // omega_A - n_t omega_s
};

RenormalizedFrequencies renormalized_frequencies(const EngineeringParams& p);

/// (Omega, alpha) parametrisation with alpha = |crw| / (|rw| + |crw|) and
/// Omega = sqrt(N) (|rw| + |crw|), so that (1 - alpha) Omega / sqrt(N) and
/// alpha Omega / sqrt(N) give back |rw| and |crw| exactly. Signs are a gauge
/// choice (sigma^+ -> -i sigma^+, a -> i a) and are kept separately.
struct AdmCouplings {
  double rw = 0.0;
  double crw = 0.0;
  double omega_mean = 0.0;
  double alpha = 0.0;
  int rw_sign = 1;
  int crw_sign = 1;
};

AdmCouplings anisotropy(double omega_e3, double omega_e4, int n_sites);

}  // namespace adm
