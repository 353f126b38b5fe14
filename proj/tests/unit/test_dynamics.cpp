#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "adm/dynamics.hpp"
#include "adm/errors.hpp"
#include "adm/spectra.hpp"

using namespace adm;

namespace {

ModelParams fig3(double omega, double alpha) {
  ModelParams p;
  p.omega = omega;
  p.alpha = alpha;
  return p;
}

TimeDependentHamiltonian static_hamiltonian(const SparseOperator& h) {
  TimeDependentHamiltonian out(h.dim());
  out.add("h", h, [](double) { return cplx(1.0); });
  return out;
}

std::vector<cplx> evolve(const TimeDependentHamiltonian& h, std::vector<cplx> psi, double t_end, long steps) {
  Rk4Integrator rk4(psi.size());
  const double dt = t_end / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) rk4.step(h, psi, s * dt, dt);
  return psi;
}

double distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST(Rk4, StationaryPhotonState) {
  const CompositeBasis b(3, 2);
  const auto t = build_adm_terms(b, Boundary::Periodic);
  const auto h = static_hamiltonian(t.photon_energy);
  const auto psi0 = StateVector::basis_state(b, {0, 1});
  const double dt = 1e-3;
  StateVector psi = psi0;
  for (int s = 0; s < 2000; ++s) psi = rk4_step(h, psi, s * dt, dt);
  const cplx expected = std::polar(1.0, -2.0);
  EXPECT_LT(std::abs(psi[b.index_of({0, 1})] - expected), 1e-12);
  EXPECT_NEAR(fidelity(psi, psi0), 1.0, 1e-12);
  EXPECT_NEAR(photon_number(psi), 1.0, 1e-12);
}

TEST(Rk4, RabiOscillation) {
  const CompositeBasis b(1, 0);
  const double omega = 1.0;
  TimeDependentHamiltonian h(2);
  h.add("sigma_x", SparseOperator::from_entries(2, {{0, 1, 1.0}, {1, 0, 1.0}}, true),
        [omega](double) { return cplx(omega); });
  const double t_end = std::numbers::pi / 2.0;
  const long steps = std::lround(t_end / 1e-3);
  const auto psi = evolve(h, {1.0, 0.0}, t_end, steps);
  EXPECT_NEAR(std::norm(psi[1]), std::pow(std::sin(omega * t_end), 2), 1e-8);
  for (double frac : {0.3, 0.7}) {
    const auto p = evolve(h, {1.0, 0.0}, frac * t_end, steps);
    EXPECT_NEAR(std::norm(p[1]), std::pow(std::sin(omega * frac * t_end), 2), 1e-8);
  }
}

TEST(Rk4, FourthOrderConvergence) {
  const auto t = build_adm_terms(CompositeBasis(2, 6), Boundary::Periodic);
  const auto h = static_hamiltonian(assemble(t, fig3(1.0, 0.7)));
  std::vector<cplx> psi0(t.basis.dim());
  for (std::size_t i = 0; i < psi0.size(); ++i) psi0[i] = cplx(1.0 + 0.1 * i, 0.05 * i);
  double n = 0.0;
  for (auto& x : psi0) n += std::norm(x);
  for (auto& x : psi0) x /= std::sqrt(n);
  const double t_end = 2.0;
  const long base = 40;
  const auto ref = evolve(h, psi0, t_end, base * 8);
  const double e1 = distance(evolve(h, psi0, t_end, base), ref);
  const double e2 = distance(evolve(h, psi0, t_end, base * 2), ref);
  const double e4 = distance(evolve(h, psi0, t_end, base * 4), ref);
  // Against a dt/8 reference the ideal ratios are (1 - 8^-4)/(2^-4 - 8^-4) and its successor.
  const double r1 = e1 / e2, r2 = e2 / e4;
  EXPECT_GT(r1, 8.0) << e1 << " " << e2;
  EXPECT_LT(r1, 32.0);
  EXPECT_GT(r2, 8.0) << e2 << " " << e4;
  EXPECT_LT(r2, 32.0);
  const SpectralPropagator exact(assemble(t, fig3(1.0, 0.7)));
  EXPECT_LT(distance(ref, exact.evolve(psi0, t_end)), 0.2 * e4);
}

TEST(Rk4, NonFiniteAmplitudesAbort) {
  TimeDependentHamiltonian h(2);
  h.add("blowup", SparseOperator::from_entries(2, {{0, 1, 1.0}, {1, 0, 1.0}}, true),
        [](double) { return cplx(std::numeric_limits<double>::infinity()); });
  Rk4Integrator rk4(2);
  std::vector<cplx> psi{1.0, 0.0};
  EXPECT_THROW(rk4.step(h, psi, 0.0, 0.1), NumericError);
}

TEST(Rk4, LongRunNormDrift) {
  const auto t = build_adm_terms(CompositeBasis(6, 40), Boundary::Periodic);
  const auto op = assemble(t, fig3(1.0, 0.7));
  const auto h = static_hamiltonian(op);
  const double dt = kStabilityLimit / h.norm_bound(0.0);
  std::vector<cplx> psi(t.basis.dim());
  psi[0] = 1.0;
  Rk4Integrator rk4(psi.size());
  double drift = 0.0;
  for (long s = 0; s < 100000; ++s) drift = std::max(drift, std::abs(std::sqrt(rk4.step(h, psi, s * dt, dt)) - 1.0));
  EXPECT_LT(drift, 1e-8);
}

TEST(SpectralPropagator, UnitaryAndMatchesClosedForm) {
  const auto h = SparseOperator::from_entries(2, {{0, 1, 0.5}, {1, 0, 0.5}, {1, 1, 1.0}}, true);
  const SpectralPropagator u(h);
  const auto out = u.evolve(std::vector<cplx>{1.0, 0.0}, 3.0);
  EXPECT_NEAR(std::norm(out[0]) + std::norm(out[1]), 1.0, 1e-14);
  // Two-level detuned Rabi: P_1 = (W^2 / W_eff^2) sin^2(W_eff t), W = 0.5, W_eff = sqrt(0.25 + 0.25).
  const double weff = std::sqrt(0.5);
  EXPECT_NEAR(std::norm(out[1]), 0.25 / 0.5 * std::pow(std::sin(weff * 3.0), 2), 1e-13);
  EXPECT_THROW(SpectralPropagator(SparseOperator::from_entries(2, {{0, 1, 1.0}}, false)), std::invalid_argument);
}

TEST(SweepProtocol, ControlEndpoints) {
  SweepProtocol sr{SweepKind::SR, 20.0};
  EXPECT_EQ(sr.control_at(0.0), 0.0);
  EXPECT_EQ(sr.control_at(20.0), 1.5);
  EXPECT_DOUBLE_EQ(sr.params_at(fig3(0, 0.7), 10.0).omega, 0.75);
  SweepProtocol srs{SweepKind::SRS, 20.0};
  EXPECT_EQ(srs.control_at(0.0), 0.5);
  EXPECT_EQ(srs.control_at(20.0), -0.1);
  const auto p = srs.params_at(fig3(0.6, 0.3), 20.0);
  EXPECT_EQ(p.omega_a_tilde, -0.1);
  EXPECT_EQ(p.omega, 0.6);
}

TEST(SweepHamiltonian, MatchesAssembledModelAtEveryTime) {
  const auto t = build_adm_terms(CompositeBasis(2, 3), Boundary::Periodic);
  SweepProtocol pr{SweepKind::SRS, 7.0};
  const auto base = fig3(0.6, 0.3);
  const auto h = sweep_hamiltonian(t, pr, base);
  for (double time : {0.0, 2.5, 7.0}) {
    const auto dense = h.dense(time);
    const auto ref = assemble(t, pr.params_at(base, time)).to_dense();
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(std::abs(dense[i] - ref[i]), 0.0, 1e-15);
  }
  pr.duration = 0.0;
  EXPECT_THROW(sweep_hamiltonian(t, pr, base), std::invalid_argument);
}

TEST(GroundStateInitial, SrStartIsVacuum) {
  const auto t = build_adm_terms(CompositeBasis(6, 10), Boundary::Periodic);
  const auto psi = ground_state_initial(t, fig3(0.0, 0.7));
  EXPECT_NEAR(fidelity(psi, StateVector::basis_state(t.basis, {0, 0})), 1.0, 1e-14);
  EXPECT_NEAR(parity_expect(psi), 1.0, 1e-14);
}

TEST(GroundStateInitial, SrsStartIsEvenAndNormalised) {
  const auto t = build_adm_terms(CompositeBasis(6, 12), Boundary::Periodic);
  auto p = fig3(0.6, 0.3);
  p.omega_a_tilde = 0.5;
  const auto psi = ground_state_initial(t, p);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  EXPECT_NEAR(parity_expect(psi), 1.0, 1e-12);
}

TEST(GroundStateInitial, DegenerateStartIsRefused) {
  // |gg,0> and |ee,0> are both even and both at zero energy.
  const auto t = build_adm_terms(CompositeBasis(2, 2), Boundary::Periodic);
  ModelParams p;
  p.omega_a_tilde = 0.0;
  p.v_int = 0.0;
  EXPECT_THROW(ground_state_initial(t, p), NumericError);
}

TEST(RunSweep, SuddenQuenchLimit) {
  const auto t = build_adm_terms(CompositeBasis(4, 6), Boundary::Periodic);
  const auto base = fig3(0.0, 0.7);
  const auto psi0 = ground_state_initial(t, base);
  SweepProtocol pr{SweepKind::SR, 1e-9};
  const auto run = run_sweep(t, pr, psi0, base);
  const auto final_h = assemble(t, pr.params_at(base, pr.duration));
  const auto target = eigenpairs_in_sector(final_h, t.basis, Parity::Even, 1).embed_complex(0, t.basis.dim());
  EXPECT_NEAR(run.records.back().fidelity, fidelity(psi0.amplitudes(), target), 1e-9);
  EXPECT_EQ(run.records.front().t, 0.0);
  EXPECT_EQ(run.records.back().t, pr.duration);
  EXPECT_EQ(run.records.back().control, 1.5);
}

TEST(RunSweep, SamplingScheduleAndConservation) {
  const auto t = build_adm_terms(CompositeBasis(4, 6), Boundary::Periodic);
  const auto base = fig3(0.0, 0.0);
  const auto psi0 = ground_state_initial(t, base);
  SweepProtocol pr{SweepKind::SR, 12.0};
  pr.sample_count = 10;
  const auto run = run_sweep(t, pr, psi0, base);
  ASSERT_EQ(run.records.size(), 11u);
  for (std::size_t i = 1; i < run.records.size(); ++i) EXPECT_GT(run.records[i].t, run.records[i - 1].t);
  EXPECT_LE(run.dt * run.norm_bound, kStabilityLimit * (1 + 1e-12));
  EXPECT_NEAR(run.dt * run.steps, 12.0, 1e-12);
  EXPECT_LT(run.max_norm_drift, 1e-8);
  EXPECT_LT(run.max_parity_drift, 1e-6);
  // Only Omega(t) scales the RW term, so the excitation number stays put at alpha = 0.
  EXPECT_NEAR(excitation_number(run.final_state), excitation_number(psi0), 1e-6);

  pr.sample_stride = 5;
  const auto strided = run_sweep(t, pr, psi0, base);
  EXPECT_EQ(strided.records.size(), static_cast<std::size_t>(1 + run.steps / 5 + (run.steps % 5 ? 1 : 0)));
}

TEST(RunSweep, GuardAndInputChecks) {
  const auto t = build_adm_terms(CompositeBasis(2, 3), Boundary::Periodic);
  const auto base = fig3(0.0, 0.7);
  const auto psi0 = ground_state_initial(t, base);
  SweepProtocol pr{SweepKind::SR, 5.0};
  pr.dt = 1.0;
  EXPECT_THROW(run_sweep(t, pr, psi0, base), std::invalid_argument);
  pr.dt = 0.0;
  StateVector unnormalised(t.basis);
  unnormalised[0] = 2.0;
  EXPECT_THROW(run_sweep(t, pr, unnormalised, base), std::invalid_argument);
  EXPECT_THROW(run_sweep(t, pr, StateVector::basis_state(CompositeBasis(2, 2), {0, 0}), base), std::invalid_argument);
}

TEST(RunSweep, CutoffTailWarning) {
  const auto t = build_adm_terms(CompositeBasis(2, 3), Boundary::Periodic);
  const auto base = fig3(0.0, 0.7);
  SweepProtocol pr{SweepKind::SR, 5.0};
  pr.omega_final = 3.0;
  const auto run = run_sweep(t, pr, ground_state_initial(t, base), base);
  EXPECT_GT(run.max_fock_tail, 1e-6);
  ASSERT_FALSE(run.warnings.empty());
}

TEST(SelectDuration, DoublesUntilConverged) {
  const auto t = build_adm_terms(CompositeBasis(2, 10), Boundary::Periodic);
  const auto base = fig3(0.0, 0.7);
  const auto psi0 = ground_state_initial(t, base);
  SweepProtocol pr{SweepKind::SR, 1.0};
  const auto study = select_duration(t, pr, psi0, base, 2.0, 0.005, 256.0);
  ASSERT_GE(study.trace.size(), 2u);
  EXPECT_EQ(study.trace.front().first, 2.0);
  for (std::size_t i = 1; i < study.trace.size(); ++i)
    EXPECT_DOUBLE_EQ(study.trace[i].first, 2.0 * study.trace[i - 1].first);
  EXPECT_TRUE(study.converged);
  EXPECT_EQ(study.duration, study.trace.back().first);
  const auto n = study.trace.size();
  EXPECT_LT(std::abs(study.trace[n - 1].second - study.trace[n - 2].second), 0.005);
  EXPECT_THROW(select_duration(t, pr, psi0, base, 0.0), std::invalid_argument);
}
