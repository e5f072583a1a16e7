#include <benchmark/benchmark.h>

#include "modlat/modform.hpp"
#include "modlat/theta.hpp"

using namespace modlat;

static void BM_Multiply(benchmark::State& state) {
  const Rational order = state.range(0);
  const QSeries a = expand({FormName::ThetaD4, 1}, order);
  const QSeries b = expand({FormName::Delta16, 1}, order);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->Arg(16)->Arg(64)->Arg(256);

static void BM_Eta(benchmark::State& state) {
  const Rational order = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(expand({FormName::Eta, 1}, order));
}
BENCHMARK(BM_Eta)->Arg(64)->Arg(256);

static void BM_SolveGeneral30(benchmark::State& state) {
  const ThetaDecomposition d = make_decomposition(2, 30, BasisKind::General, {1, -30, 210, -282, 112});
  const QSeries s = expand_decomposition(d, 10);
  std::vector<KnownCoefficient> known;
  for (int e = 0; e < 10; ++e) known.push_back({e, s.coeff_at(e)});
  for (auto _ : state) benchmark::DoNotOptimize(solve_coefficients(d.basis, known));
}
BENCHMARK(BM_SolveGeneral30);

BENCHMARK_MAIN();
