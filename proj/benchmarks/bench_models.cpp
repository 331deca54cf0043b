#include <benchmark/benchmark.h>

#include "halfsph/models.hpp"

using namespace halfsph;

static void BM_GramRank(benchmark::State& state) {
  const int family = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const char* sampler = family == 1 ? "S_C" : family == 2 ? "pq" : "dotS";
  auto words = monomial_family(family, n);
  for (auto _ : state) benchmark::DoNotOptimize(gram_rank(words, sampler, n, 200, 1, 1e-8));
}
BENCHMARK(BM_GramRank)->ArgsProduct({{1, 2, 3}, {2, 3}})->Unit(benchmark::kMillisecond);

static void BM_CheckRelations(benchmark::State& state) {
  auto p = make_sphere("Ccirc", 3);
  auto pt = model("ddotS", 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(check_relations(p, pt));
}
BENCHMARK(BM_CheckRelations);

static void BM_Determinants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(prop23_determinants());
}
BENCHMARK(BM_Determinants);
