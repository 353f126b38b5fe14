#include "adm/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace adm {

void validate(const EngineeringParams& p) {
  if (p.delta_1 == 0.0) throw std::invalid_argument("EngineeringParams: delta_1 must be nonzero");
  if (p.delta_2 == 0.0) throw std::invalid_argument("EngineeringParams: delta_2 must be nonzero");
  if (!(p.drive_freq > 0.0)) throw std::invalid_argument("EngineeringParams: drive_freq must be > 0");
  if (p.sideband < 0) throw std::invalid_argument("EngineeringParams: sideband must be >= 0");
  if (p.n_sites < 1) throw std::invalid_argument("EngineeringParams: n_sites must be >= 1");
  for (double v : {p.omega_1, p.omega_2, p.delta_1, p.delta_2, p.drive_amp, p.drive_freq, p.omega_c_bare,
                   p.omega_a_bare, p.pump_freq})
    if (!std::isfinite(v)) throw std::invalid_argument("EngineeringParams: non-finite field");
}

namespace {

double bessel_series(int order, double x) {
  const long double half = static_cast<long double>(x) / 2.0L;
  const long double q = -half * half;
  long double term = 1.0L;
  for (int k = 1; k <= order; ++k) term *= half / k;
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (k + order));
    sum += term;
    // Terms shrink monotonically once k exceeds |x|/2.
    if (k > half && std::abs(term) <= 1e-19L * std::abs(sum)) break;
  }
  return static_cast<double>(sum);
}

double bessel_miller(int order, double x) {
  // x > 0 here. Start well above both the order and x so the seed error decays.
  const double big = std::max(static_cast<double>(order), x);
  int start = static_cast<int>(big + 30.0 + 10.0 * std::cbrt(big));
  if (start % 2) ++start;
  long double next = 0.0L;
  long double cur = 1e-300L;
  long double norm = 0.0L;
  long double wanted = 0.0L;
  for (int n = start; n >= 1; --n) {
    const long double prev = 2.0L * n / x * cur - next;  // J_{n-1}
    next = cur;
    cur = prev;
    if (n - 1 == order) wanted = cur;
    if ((n - 1) % 2 == 0) norm += ((n - 1) == 0 ? 1.0L : 2.0L) * cur;
    if (std::abs(cur) > 1e300L) {
      cur *= 1e-300L;
      next *= 1e-300L;
      norm *= 1e-300L;
      wanted *= 1e-300L;
    }
  }
  return static_cast<double>(wanted / norm);
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0) throw std::invalid_argument("bessel_j: order must be >= 0, got " + std::to_string(order));
  if (!std::isfinite(x)) throw std::invalid_argument("bessel_j: non-finite argument");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  const double sign = (x < 0.0 && order % 2 == 1) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  return sign * (ax <= 15.0 ? bessel_series(order, ax) : bessel_miller(order, ax));
}

EffectiveCouplings effective_couplings(const EngineeringParams& p) {
  if (p.delta_1 == 0.0) throw std::invalid_argument("effective_couplings: delta_1 is zero");
  if (p.delta_2 == 0.0) throw std::invalid_argument("effective_couplings: delta_2 is zero");
  const double prefactor = p.omega_2 * p.omega_1 / 2.0;
  return {prefactor * (1.0 / p.delta_2 - 1.0 / p.delta_1), prefactor / p.delta_2};
}

FloquetCouplings floquet_couplings(const EngineeringParams& p, const EffectiveCouplings& e) {
  if (p.n_sites < 1) throw std::invalid_argument("floquet_couplings: n_sites must be >= 1");
  if (!(p.drive_freq > 0.0)) throw std::invalid_argument("floquet_couplings: drive_freq must be > 0");
  if (p.sideband < 0) throw std::invalid_argument("floquet_couplings: sideband must be >= 0");
  const double root_n = std::sqrt(static_cast<double>(p.n_sites));
  const double k = p.drive_ratio();
  return {e.rw / root_n * bessel_j(0, k), e.crw / root_n * bessel_j(2 * p.sideband, k)};
}

RenormalizedFrequencies renormalized_frequencies(const EngineeringParams& p) {
  const double shift = p.sideband * p.drive_freq;
  return {p.omega_c_bare - shift, p.omega_a_bare - shift};
}

AdmCouplings anisotropy(double omega_e3, double omega_e4, int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("anisotropy: n_sites must be >= 1");
  const double rw = std::abs(omega_e3);
  const double crw = std::abs(omega_e4);
  const double sum = rw + crw;
  if (!(sum > 0.0)) throw std::invalid_argument("anisotropy: rw and crw couplings both vanish");
  AdmCouplings out;
  out.rw = rw;
  out.crw = crw;
  out.alpha = crw / sum;
  out.omega_mean = std::sqrt(static_cast<double>(n_sites)) * sum;
  out.rw_sign = omega_e3 < 0.0 ? -1 : 1;
  out.crw_sign = omega_e4 < 0.0 ? -1 : 1;
  return out;
}

}  // namespace adm
