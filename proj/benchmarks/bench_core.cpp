#include <benchmark/benchmark.h>

#include "adm/adm.hpp"

using namespace adm;

namespace {

ModelParams fig3(double omega, double alpha) {
  ModelParams p;
  p.omega = omega;
  p.alpha = alpha;
  return p;
}

const TermSet& paper_terms() {
  static const TermSet terms = build_adm_terms(CompositeBasis(6, 40), Boundary::Periodic);
  return terms;
}

}  // namespace

static void BM_BuildTerms(benchmark::State& state) {
  const CompositeBasis basis(static_cast<int>(state.range(0)), 40);
  for (auto _ : state) benchmark::DoNotOptimize(build_adm_terms(basis, Boundary::Periodic));
}
BENCHMARK(BM_BuildTerms)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Assemble(benchmark::State& state) {
  const auto& t = paper_terms();
  for (auto _ : state) benchmark::DoNotOptimize(assemble(t, fig3(1.0, 0.7)));
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

static void BM_MatVec(benchmark::State& state) {
  const auto h = assemble(paper_terms(), fig3(1.0, 0.7));
  std::vector<cplx> x(h.dim(), cplx(1.0, 0.5)), out(h.dim());
  for (auto _ : state) {
    h.apply_add(x, cplx(1.0), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(h.nnz()));
}
BENCHMARK(BM_MatVec);

static void BM_Rk4Step(benchmark::State& state) {
  const auto& t = paper_terms();
  SweepProtocol pr{SweepKind::SR, 100.0};
  const auto h = sweep_hamiltonian(t, pr, fig3(0.0, 0.7));
  std::vector<cplx> psi(t.basis.dim());
  psi[0] = 1.0;
  Rk4Integrator rk4(psi.size());
  const double dt = kStabilityLimit / h.norm_bound(pr.duration);
  double time = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4.step(h, psi, time, dt));
    time += dt;
  }
}
BENCHMARK(BM_Rk4Step);

static void BM_SectorEigenpairs(benchmark::State& state) {
  const auto& t = paper_terms();
  const auto h = assemble(t, fig3(1.0, 0.7));
  const bool vectors = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(eigenpairs_in_sector(h, t.basis, Parity::Even, 6, vectors));
}
BENCHMARK(BM_SectorEigenpairs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Bessel(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(order, x));
    x += 0.37;
    if (x > 40.0) x = 0.0;
  }
}
BENCHMARK(BM_Bessel)->Arg(0)->Arg(2);

static void BM_StructureFactor(benchmark::State& state) {
  const auto& t = paper_terms();
  const auto psi = ground_state_initial(t, fig3(1.5, 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(structure_factor(psi, 3.141592653589793));
}
BENCHMARK(BM_StructureFactor);

BENCHMARK_MAIN();
