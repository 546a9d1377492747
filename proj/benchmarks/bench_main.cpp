#include <benchmark/benchmark.h>

#include "gwloc/fixed_graph.hpp"
#include "gwloc/gw_calculator.hpp"
#include "gwloc/moduli_integrals.hpp"
#include "gwloc/multicover.hpp"

namespace {

// Fresh cache per iteration so every run pays for its vertex integrals.
void BM_PlaneCurveCount(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  for (auto _ : state) {
    gwloc::IntegralCache cache;
    gwloc::EvaluationOptions options;
    options.cache = &cache;
    options.sum.workers = 1;
    benchmark::DoNotOptimize(gwloc::plane_curve_count(g, d, options));
  }
}
BENCHMARK(BM_PlaneCurveCount)->Args({0, 2})->Args({0, 3})->Args({0, 4})->Args({1, 3})->Unit(benchmark::kMillisecond);

void BM_MulticoverGraphSum(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  for (auto _ : state) {
    gwloc::IntegralCache cache;
    gwloc::MulticoverOptions options;
    options.cache = &cache;
    options.sum.workers = 1;
    benchmark::DoNotOptimize(gwloc::multicover_graphsum(g, d, options));
  }
}
BENCHMARK(BM_MulticoverGraphSum)->Args({0, 4})->Args({1, 3})->Args({1, 5})->Unit(benchmark::kMillisecond);

void BM_MastSum(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    gwloc::IntegralCache cache;
    benchmark::DoNotOptimize(gwloc::mast_sum(d, &cache));
  }
}
BENCHMARK(BM_MastSum)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_GenusOneIntegral(benchmark::State& state) {
  const std::vector<int> exponents(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gwloc::integral_g1(exponents));
}
BENCHMARK(BM_GenusOneIntegral)->DenseRange(2, 8, 2);

void BM_EnumerateShapes(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  const int d = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(gwloc::enumerate_shapes(g, r, d));
}
BENCHMARK(BM_EnumerateShapes)->Args({0, 2, 4})->Args({1, 2, 3})->Args({1, 1, 5})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
