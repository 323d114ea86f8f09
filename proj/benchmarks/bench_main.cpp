#include <benchmark/benchmark.h>

#include "roekms/tree.hpp"

using namespace roekms;

static void BM_SparseMultiply(benchmark::State& state) {
  auto space = make_interval(state.range(0));
  Rng rng(7);
  BandOperator a = random_band_operator(space, 3.0, 0.5, rng);
  BandOperator b = random_band_operator(space, 3.0, 0.5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SparseMultiply)->Arg(200)->Arg(1000)->Arg(5000);

static void BM_GibbsState(benchmark::State& state) {
  auto space = make_tree(2, static_cast<int>(state.range(0)));
  Potential h = named_potential(space, "word-length");
  for (auto _ : state) benchmark::DoNotOptimize(gibbs_state(h, 1.0));
}
BENCHMARK(BM_GibbsState)->Arg(8)->Arg(12)->Arg(16);

static void BM_BandDecompose(benchmark::State& state) {
  auto space = make_interval(state.range(0));
  Rng rng(11);
  BandOperator a = random_band_operator(space, 4.0, 0.6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(band_decompose(a));
}
BENCHMARK(BM_BandDecompose)->Arg(200)->Arg(1000)->Arg(5000);

static void BM_LogPartialSum(benchmark::State& state) {
  auto rule = tree_level_rule(2);
  for (auto _ : state) benchmark::DoNotOptimize(log_partial_sum(rule, 1.0, state.range(0)));
}
BENCHMARK(BM_LogPartialSum)->Arg(2000)->Arg(20000);

BENCHMARK_MAIN();
