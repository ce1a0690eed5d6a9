#include <benchmark/benchmark.h>

#include "cubicpts/counting.hpp"
#include "cubicpts/quadratic.hpp"
#include "cubicpts/sym2.hpp"
#include "cubicpts/zeta.hpp"

using namespace cubicpts;

static void CountV(benchmark::State& state) {
  const auto Q = rational_field();
  for (auto _ : state) benchmark::DoNotOptimize(count_V(Q, state.range(0)).total);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(CountV)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond)->Complexity();

static void CountVGaussian(benchmark::State& state) {
  const auto K = field_invariants(-4);
  for (auto _ : state) benchmark::DoNotOptimize(count_V(K, state.range(0)).total);
}
BENCHMARK(CountVGaussian)->Arg(100)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

static void BruteForceHistogram(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_histogram_Q(state.range(0)).Bmax);
}
BENCHMARK(BruteForceHistogram)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

static void QuadraticPointsV(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_quadratic_breakdown(state.range(0)).total());
}
BENCHMARK(QuadraticPointsV)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void Sym2V(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_sym2_V(state.range(0)).total());
}
BENCHMARK(Sym2V)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void DedekindZeta(benchmark::State& state) {
  const i64 d = -static_cast<i64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dedekind_zeta(2.0, d).value);
}
BENCHMARK(DedekindZeta)->Arg(4)->Arg(23)->Arg(1003);

static void LSums(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(discriminant_L_sums(static_cast<double>(state.range(0))).S1);
}
BENCHMARK(LSums)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
