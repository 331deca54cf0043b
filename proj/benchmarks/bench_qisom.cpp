#include <benchmark/benchmark.h>

#include "halfsph/qisom.hpp"

using namespace halfsph;

static void BM_CollectConditions(benchmark::State& state) {
  auto t = expand_coaction(parse_relation("z1 z2* z3 = z3 z2* z1"), 3);
  for (auto _ : state) benchmark::DoNotOptimize(collect_conditions(t, "Cstar"));
}
BENCHMARK(BM_CollectConditions);

static void BM_SaturateStarTriple(benchmark::State& state) {
  auto conds = collect_conditions(expand_coaction(parse_relation("z1 z2* z3 = z3 z2* z1"), 3), "Cstar");
  for (auto _ : state) benchmark::DoNotOptimize(saturate(conds, BracketTerm::triple(true), 10000));
}
BENCHMARK(BM_SaturateStarTriple)->Unit(benchmark::kMillisecond);

static void BM_ClosurePipeline(benchmark::State& state) {
  const char* spheres[] = {"Cstar", "Cstarstar", "Csharp", "Ccirc", "Rstar"};
  const char* s = spheres[state.range(0)];
  state.SetLabel(s);
  for (auto _ : state) benchmark::DoNotOptimize(qisom_closure(s));
}
BENCHMARK(BM_ClosurePipeline)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
