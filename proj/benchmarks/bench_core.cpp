#include <benchmark/benchmark.h>

#include <vector>

#include "qcs/coherent.hpp"
#include "qcs/dynamics.hpp"
#include "qcs/identity.hpp"
#include "qcs/qspecial.hpp"
#include "qcs/quad.hpp"

namespace {

void BM_PochhammerInf(benchmark::State& state) {
  const qcs::QBase q(static_cast<double>(state.range(0)) / 100.0);
  double z = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcs::pochhammer_inf(z, q));
    z -= 1e-9;
  }
}
BENCHMARK(BM_PochhammerInf)->Arg(30)->Arg(50)->Arg(90)->Arg(99);

void BM_RamanujanMoment(benchmark::State& state) {
  const qcs::QBase q(0.9);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcs::ramanujan_moment_numeric(n, q));
}
BENCHMARK(BM_RamanujanMoment)->DenseRange(0, 10, 5)->Unit(benchmark::kMicrosecond);

void BM_NormSeries(benchmark::State& state) {
  const qcs::QBase q(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(qcs::norm_sq({2.0, 1.0}, q));
}
BENCHMARK(BM_NormSeries);

void BM_IdentityMC(benchmark::State& state) {
  qcs::MCConfig mc;
  mc.samples = 100000;
  for (auto _ : state) benchmark::DoNotOptimize(qcs::identity_element_mc(2, 5, qcs::QBase(0.5), mc));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(mc.samples));
}
BENCHMARK(BM_IdentityMC)->Unit(benchmark::kMillisecond);

void BM_PropagateUnitInterval(benchmark::State& state) {
  qcs::ModelParams p;
  p.N = static_cast<int>(state.range(0));
  const std::vector<double> grid{0.0, 1.0};
  const auto drive = qcs::DriveProfile::constant(0.1);
  const auto psi0 = qcs::FockVector::basis(p.dim(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(qcs::propagate(psi0, grid, drive, p));
}
BENCHMARK(BM_PropagateUnitInterval)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
