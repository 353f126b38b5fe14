#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "adm/couplings.hpp"

using namespace adm;

namespace {

// Ascending series with a 1e-15 relative term cutoff; independent of the library routine.
double series_j(int n, double x) {
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= static_cast<long double>(x) / 2.0L / k;
  long double sum = term;
  const long double q = -static_cast<long double>(x) * x / 4.0L;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::fabs(term) < 1e-15L * std::fabs(sum) && k > x) break;
  }
  return static_cast<double>(sum);
}

EngineeringParams fig2(double ratio) {
  EngineeringParams p;
  p.n_sites = 1;
  p.sideband = 1;
  p.drive_freq = 1.0;
  p.drive_amp = ratio;
  return p;
}

constexpr double kJ0Zero = 2.404825557695773;

}  // namespace

TEST(Bessel, TrivialValues) {
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(2, 0.0), 0.0);
  EXPECT_LT(std::abs(bessel_j(0, kJ0Zero)), 1e-9);
}

TEST(Bessel, MatchesSeriesOracle) {
  for (int n = 0; n <= 6; ++n)
    for (double x = 0.0; x <= 15.0; x += 0.173) EXPECT_NEAR(bessel_j(n, x), series_j(n, x), 1e-12) << n << " " << x;
}

TEST(Bessel, MatchesStdLibraryUpTo50) {
  for (int n = 0; n <= 10; ++n)
    for (double x = 0.05; x <= 50.0; x += 0.37)
      EXPECT_NEAR(bessel_j(n, x), std::cyl_bessel_j(static_cast<double>(n), x), 1e-12) << n << " " << x;
}

TEST(Bessel, ThreeTermRecurrence) {
  for (int n = 1; n <= 10; ++n)
    for (double x = 0.1; x <= 20.0; x += 0.25) {
      const double lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
      const double rhs = 2.0 * n / x * bessel_j(n, x);
      EXPECT_NEAR(lhs, rhs, 1e-10) << n << " " << x;
    }
}

TEST(Bessel, NegativeArgumentParity) {
  for (int n = 0; n <= 4; ++n) {
    const double sign = n % 2 ? -1.0 : 1.0;
    EXPECT_NEAR(bessel_j(n, -3.7), sign * bessel_j(n, 3.7), 1e-15);
  }
}

TEST(Bessel, Errors) {
  EXPECT_THROW(bessel_j(0, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  EXPECT_THROW(bessel_j(0, std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(bessel_j(-1, 1.0), std::invalid_argument);
}

TEST(EffectiveCouplings, DirectSubstitution) {
  EngineeringParams p;
  p.omega_1 = 1;
  p.omega_2 = 1;
  p.delta_1 = 10;
  p.delta_2 = -10;
  const auto e = effective_couplings(p);
  EXPECT_DOUBLE_EQ(e.rw, -0.1);
  EXPECT_DOUBLE_EQ(e.crw, -0.05);
}

TEST(EffectiveCouplings, EqualDetuningsCancelRw) {
  EngineeringParams p;
  p.delta_1 = p.delta_2 = 7.0;
  EXPECT_EQ(effective_couplings(p).rw, 0.0);
}

TEST(EffectiveCouplings, ZeroLegCoupling) {
  EngineeringParams p;
  p.omega_1 = 0;
  const auto e = effective_couplings(p);
  EXPECT_EQ(e.rw, 0.0);
  EXPECT_EQ(e.crw, 0.0);
}

TEST(EffectiveCouplings, ZeroDetuningNamesTheCulprit) {
  EngineeringParams p;
  p.delta_1 = 0;
  try {
    effective_couplings(p);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("delta_1"), std::string::npos);
  }
  p.delta_1 = 1;
  p.delta_2 = 0;
  try {
    effective_couplings(p);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("delta_2"), std::string::npos);
  }
}

TEST(FloquetCouplings, Figure2Endpoints) {
  const EffectiveCouplings e{2.0, 1.0};
  auto f = floquet_couplings(fig2(0.0), e);
  EXPECT_EQ(f.rw, 2.0);
  EXPECT_EQ(f.crw, 0.0);

  f = floquet_couplings(fig2(kJ0Zero), e);
  EXPECT_LT(std::abs(f.rw), 1e-8);
  EXPECT_GT(std::abs(f.crw / f.rw), 1e6);

  f = floquet_couplings(fig2(3.0), e);
  EXPECT_NEAR(f.rw, 2.0 * series_j(0, 3.0), 1e-12);
  EXPECT_NEAR(f.crw, series_j(2, 3.0), 1e-12);
}

TEST(FloquetCouplings, SqrtNFactorAndHigherSideband) {
  auto p = fig2(1.3);
  p.n_sites = 4;
  p.sideband = 2;
  const auto f = floquet_couplings(p, {2.0, 1.0});
  EXPECT_NEAR(f.rw, 2.0 * series_j(0, 1.3) / 2.0, 1e-13);
  EXPECT_NEAR(f.crw, series_j(4, 1.3) / 2.0, 1e-13);
}

TEST(FloquetCouplings, EvenInDriveAmplitude) {
  for (double r : {0.3, 1.7, 4.2}) {
    const auto a = floquet_couplings(fig2(r), {2.0, 1.0});
    const auto b = floquet_couplings(fig2(-r), {2.0, 1.0});
    EXPECT_DOUBLE_EQ(a.rw, b.rw);
    EXPECT_DOUBLE_EQ(a.crw, b.crw);
  }
}

TEST(FloquetCouplings, RatioSpansZeroToDivergence) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const auto f = floquet_couplings(fig2(i * 0.001), {2.0, 1.0});
    const double r = std::abs(f.crw) / std::abs(f.rw);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_EQ(lo, 0.0);
  EXPECT_GT(hi, 1e3);
}

TEST(RenormalizedFrequencies, Examples) {
  EngineeringParams p;
  p.omega_c_bare = 10;
  p.omega_a_bare = 10.5;
  p.sideband = 1;
  p.drive_freq = 9;
  EXPECT_DOUBLE_EQ(renormalized_frequencies(p).cavity, 1.0);
  p.drive_freq = 10;
  EXPECT_DOUBLE_EQ(renormalized_frequencies(p).atom, 0.5);
  EXPECT_LT(std::abs(renormalized_frequencies(p).atom), p.drive_freq);
  p.sideband = 0;
  EXPECT_DOUBLE_EQ(renormalized_frequencies(p).cavity, 10.0);
  EXPECT_DOUBLE_EQ(renormalized_frequencies(p).atom, 10.5);
}

TEST(Anisotropy, Limits) {
  auto a = anisotropy(1, 0, 1);
  EXPECT_EQ(a.alpha, 0.0);
  EXPECT_EQ(a.omega_mean, 1.0);
  a = anisotropy(0, 1, 1);
  EXPECT_EQ(a.alpha, 1.0);
  EXPECT_EQ(a.omega_mean, 1.0);
  a = anisotropy(1, 1, 4);
  EXPECT_EQ(a.alpha, 0.5);
  EXPECT_EQ(a.omega_mean, 4.0);
  EXPECT_DOUBLE_EQ((1 - a.alpha) * a.omega_mean / 2.0, 1.0);
  EXPECT_DOUBLE_EQ(a.alpha * a.omega_mean / 2.0, 1.0);
}

TEST(Anisotropy, RoundTripAndSigns) {
  for (double e3 : {-2.1, -0.3, 0.4, 1.9})
    for (double e4 : {-0.7, 0.05, 1.2})
      for (int n : {1, 3, 6}) {
        const auto a = anisotropy(e3, e4, n);
        EXPECT_GE(a.alpha, 0.0);
        EXPECT_LE(a.alpha, 1.0);
        const double rw = (1 - a.alpha) * a.omega_mean / std::sqrt(n);
        const double crw = a.alpha * a.omega_mean / std::sqrt(n);
        EXPECT_NEAR(a.rw_sign * rw, e3, 1e-14);
        EXPECT_NEAR(a.crw_sign * crw, e4, 1e-14);
      }
  EXPECT_THROW(anisotropy(0, 0, 1), std::invalid_argument);
}

TEST(EngineeringParams, Validation) {
  EngineeringParams p;
  EXPECT_NO_THROW(validate(p));
  p.drive_freq = 0;
  EXPECT_THROW(validate(p), std::invalid_argument);
  p = {};
  p.sideband = -1;
  EXPECT_THROW(validate(p), std::invalid_argument);
  p = {};
  p.n_sites = 0;
  EXPECT_THROW(validate(p), std::invalid_argument);
}
