#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "adm/hamiltonian.hpp"
#include "adm/observables.hpp"
#include "adm/spectra.hpp"
#include "dense.hpp"
#include "kron_oracle.hpp"

using namespace adm;

namespace {

StateVector random_state(const CompositeBasis& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> a(b.dim());
  for (auto& x : a) x = cplx(g(rng), g(rng));
  StateVector s(b, std::move(a));
  s.normalize();
  return s;
}

Eigen::VectorXcd as_eigen(const StateVector& s) {
  return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
}

}  // namespace

TEST(StateVector, ConstructionAndNorm) {
  const CompositeBasis b(2, 1);
  EXPECT_THROW(StateVector(b, std::vector<cplx>(3)), std::invalid_argument);
  EXPECT_THROW(StateVector::basis_state(b, {0, 2}), std::invalid_argument);
  EXPECT_THROW(StateVector::basis_state(b, {4, 0}), std::invalid_argument);
  const auto s = StateVector::basis_state(b, {0b10, 1});
  EXPECT_EQ(s.norm(), 1.0);
  EXPECT_EQ(s[b.index_of({0b10, 1})], cplx(1.0));
  StateVector z(b);
  EXPECT_THROW(z.normalize(), std::domain_error);
}

TEST(Fidelity, Examples) {
  const CompositeBasis b(1, 0);
  const auto g = StateVector::basis_state(b, {0, 0});
  const auto e = StateVector::basis_state(b, {1, 0});
  EXPECT_DOUBLE_EQ(fidelity(g, g), 1.0);
  EXPECT_DOUBLE_EQ(fidelity(g, e), 0.0);
  StateVector plus(b, {cplx(1.0 / std::sqrt(2.0)), cplx(1.0 / std::sqrt(2.0))});
  EXPECT_NEAR(fidelity(plus, g), 0.5, 1e-15);
  EXPECT_THROW(fidelity(g, StateVector(CompositeBasis(1, 1))), std::invalid_argument);
}

TEST(Fidelity, SymmetricAndPhaseInvariant) {
  const CompositeBasis b(3, 2);
  auto a = random_state(b, 1);
  const auto c = random_state(b, 2);
  const double f = fidelity(a, c);
  EXPECT_NEAR(f, fidelity(c, a), 1e-15);
  for (auto& x : a.amplitudes()) x *= std::polar(1.0, 0.9);
  EXPECT_NEAR(fidelity(a, c), f, 1e-14);
  EXPECT_GE(f, 0.0);
  EXPECT_LE(f, 1.0);
}

TEST(PhotonNumber, Examples) {
  const CompositeBasis b(2, 3);
  EXPECT_EQ(photon_number(StateVector::basis_state(b, {0b11, 0})), 0.0);
  StateVector s(b);
  s[b.index_of({0, 0})] = 1.0 / std::sqrt(2.0);
  s[b.index_of({0, 2})] = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(photon_number(s), 1.0, 1e-15);
}

TEST(PhotonNumber, TruncatedCoherentStateMatchesDenseOracle) {
  const int n_max = 12;
  const CompositeBasis b(2, n_max);
  const double beta = 1.3;
  StateVector s(b);
  double fact = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) fact *= n;
    const double amp = std::pow(beta, n) / std::sqrt(fact);
    s[b.index_of({0b01, n})] = amp;
    s[b.index_of({0b10, n})] = cplx(0.0, amp);
  }
  s.normalize();
  const Eigen::MatrixXd a = oracle::annihilate(n_max);
  const Eigen::MatrixXd num = oracle::embed(2, -1, Eigen::MatrixXd::Identity(2, 2), a.transpose() * a);
  const auto v = as_eigen(s);
  EXPECT_NEAR(photon_number(s), (v.adjoint() * num.cast<cplx>() * v)(0).real(), 1e-13);
  const Eigen::MatrixXd nexc = num + oracle::embed(2, 0, oracle::number(), Eigen::MatrixXd::Identity(n_max + 1, n_max + 1)) +
                               oracle::embed(2, 1, oracle::number(), Eigen::MatrixXd::Identity(n_max + 1, n_max + 1));
  EXPECT_NEAR(excitation_number(s), (v.adjoint() * nexc.cast<cplx>() * v)(0).real(), 1e-13);
}

TEST(StructureFactor, Examples) {
  const CompositeBasis b(6, 1);
  EXPECT_NEAR(structure_factor(StateVector::basis_state(b, {0b010101, 0}), std::numbers::pi), 0.25, 1e-15);
  EXPECT_NEAR(structure_factor(StateVector::basis_state(b, {0b111111, 0}), std::numbers::pi), 0.0, 1e-15);
  for (double q : {0.0, 0.4, std::numbers::pi})
    EXPECT_EQ(structure_factor(StateVector::basis_state(b, {0, 1}), q), 0.0);
  EXPECT_NEAR(structure_factor(StateVector::basis_state(b, {0b111111, 0}), 0.0), 1.0, 1e-15);
}

TEST(StructureFactor, DoubleSumOracleAndSymmetry) {
  const CompositeBasis b(4, 1);
  const auto s = random_state(b, 9);
  for (double q : {0.3, 1.1, std::numbers::pi}) {
    // (1/N^2) sum_{j,k} e^{iq(j-k)} <n_j n_k>
    cplx sum{};
    for (std::size_t i = 0; i < b.dim(); ++i) {
      const auto spins = b.state_of(i).spins;
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          if (site_excited(spins, j) && site_excited(spins, k)) sum += std::norm(s[i]) * std::polar(1.0, q * (j - k));
    }
    const double sq = structure_factor(s, q);
    EXPECT_NEAR(sq, sum.real() / 16.0, 1e-14);
    EXPECT_NEAR(sq, structure_factor(s, -q), 1e-14);
    EXPECT_GE(sq, 0.0);
    EXPECT_LE(sq, 1.0);
  }
  // sigma^z variant on the Neel state: |sum (-1)^j s_j|^2 / N^2 = 1.
  EXPECT_NEAR(structure_factor(StateVector::basis_state(b, {0b0101, 0}), std::numbers::pi, DensityOperator::SpinZ), 1.0,
              1e-15);
}

TEST(ParityExpect, Examples) {
  const CompositeBasis b(2, 2);
  EXPECT_EQ(parity_expect(StateVector::basis_state(b, {0, 0})), 1.0);
  EXPECT_EQ(parity_expect(StateVector::basis_state(b, {0b01, 0})), -1.0);
  StateVector mix(b);
  mix[b.index_of({0, 0})] = 1.0 / std::sqrt(2.0);
  mix[b.index_of({0, 1})] = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(parity_expect(mix), 0.0, 1e-15);
}

TEST(ParityExpect, SectorEigenvectorsArePure) {
  const auto t = build_adm_terms(CompositeBasis(3, 4), Boundary::Periodic);
  ModelParams p;
  p.omega = 0.9;
  p.alpha = 0.6;
  const auto h = assemble(t, p);
  for (Parity par : {Parity::Even, Parity::Odd}) {
    const auto sol = eigenpairs_in_sector(h, t.basis, par, 3);
    for (std::size_t k = 0; k < 3; ++k)
      EXPECT_NEAR(parity_expect(StateVector(t.basis, sol.embed_complex(k, t.basis.dim()))), sign_of(par), 1e-12);
  }
}

TEST(FockTail, Examples) {
  const CompositeBasis b(1, 5);
  EXPECT_EQ(fock_tail(StateVector::basis_state(b, {0, 5}), 1), 1.0);
  EXPECT_EQ(fock_tail(StateVector::basis_state(b, {0, 4}), 1), 0.0);
  EXPECT_EQ(fock_tail(StateVector::basis_state(b, {1, 4}), 2), 1.0);
  EXPECT_EQ(fock_tail(StateVector::basis_state(b, {1, 3}), 2), 0.0);
}
