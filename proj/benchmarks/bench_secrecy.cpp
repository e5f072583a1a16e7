#include <benchmark/benchmark.h>

#include "modlat/lattice.hpp"
#include "modlat/secrecy.hpp"

using namespace modlat;

static void BM_GainDecomposition(benchmark::State& state) {
  const auto src = SecrecySource::from_decomposition(make_decomposition(2, 16, BasisKind::Even, {1, -96}));
  for (auto _ : state) benchmark::DoNotOptimize(weak_secrecy_gain(src));
}
BENCHMARK(BM_GainDecomposition);

static void BM_GainGram(benchmark::State& state) {
  const auto src = SecrecySource::from_gram(catalog("D4").gram, 2);
  for (auto _ : state) benchmark::DoNotOptimize(weak_secrecy_gain(src));
}
BENCHMARK(BM_GainGram)->Unit(benchmark::kMillisecond);

static void BM_LocateMaximum(benchmark::State& state) {
  const auto src = SecrecySource::from_decomposition(make_decomposition(2, 16, BasisKind::Even, {1, -96}));
  for (auto _ : state) benchmark::DoNotOptimize(locate_maximum(src, -6, 3));
}
BENCHMARK(BM_LocateMaximum)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
