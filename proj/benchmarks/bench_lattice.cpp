#include <benchmark/benchmark.h>

#include "modlat/lattice.hpp"

using namespace modlat;

static void BM_EnumerateE8(benchmark::State& state) {
  const GramMatrix g = catalog("E8").gram;
  for (auto _ : state) benchmark::DoNotOptimize(theta_coefficients(g, state.range(0)));
}
BENCHMARK(BM_EnumerateE8)->Arg(4)->Arg(8);

static void BM_EnumerateBW16(benchmark::State& state) {
  const GramMatrix g = catalog("BW16").gram;
  for (auto _ : state) benchmark::DoNotOptimize(theta_coefficients(g, state.range(0)));
}
BENCHMARK(BM_EnumerateBW16)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
