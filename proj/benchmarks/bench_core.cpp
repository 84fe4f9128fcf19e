#include <benchmark/benchmark.h>

#include "qpj/cocycle.hpp"
#include "qpj/domination.hpp"
#include "qpj/spectrum.hpp"
#include "qpj/weyl.hpp"

namespace {

using namespace qpj;

void BM_Iterate(benchmark::State& state) {
  const auto m = presets::almost_mathieu(0.5);
  const TorusPoint x{0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate(m, CocycleKind::A, 1.3, x, state.range(0)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Iterate)->Arg(1000)->Arg(100000);

void BM_MTruncation(benchmark::State& state) {
  const auto m = presets::singular_harper(0.5);
  WeylSolver solver(m);
  const TorusPoint x{0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.at_size(HalfLine::minus, cplx(1.0, 0.01), x, state.range(0)));
  }
}
BENCHMARK(BM_MTruncation)->Arg(256)->Arg(4096);

void BM_Certify(benchmark::State& state) {
  const auto m = presets::almost_mathieu(0.5);
  const PhaseGrid grid = PhaseGrid::uniform(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify(m, 2.9, grid));
}
BENCHMARK(BM_Certify)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_TruncationSpectrum(benchmark::State& state) {
  const auto m = presets::almost_mathieu(0.5);
  const auto phases = default_truncation_phases(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(truncation_spectrum(m, {state.range(0)}, phases));
}
BENCHMARK(BM_TruncationSpectrum)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
