#include <benchmark/benchmark.h>

#include "halfsph/rewrite.hpp"

using namespace halfsph;

static void BM_ReduceStarTriple(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = make_sphere("Cstar", n);
  RuleSet rules(p);
  NCPolynomial f;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) f += NCPolynomial(Word{Letter::z(n), Letter::z(j, true), Letter::z(i), Letter::z(1)});
  for (auto _ : state) benchmark::DoNotOptimize(reduce(f, rules));
}
BENCHMARK(BM_ReduceStarTriple)->Arg(2)->Arg(3)->Arg(4);

static void BM_CheckImplicationSharp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = make_sphere("Csharp", n);
  RuleSet rules(p);
  auto t = parse_relation("z" + std::to_string(n) + " z2* z1 = z1 z2* z" + std::to_string(n));
  for (auto _ : state) benchmark::DoNotOptimize(check_implication(p, rules, t));
}
BENCHMARK(BM_CheckImplicationSharp)->Arg(3)->Arg(4)->Arg(5);

static void BM_ProjectiveCommutation(benchmark::State& state) {
  auto p = make_sphere("Cstar", 4);
  RuleSet rules(p);
  auto t = parse_relation("z1 z2* z3 z4* = z3 z4* z1 z2*");
  for (auto _ : state) benchmark::DoNotOptimize(check_implication(p, rules, t));
}
BENCHMARK(BM_ProjectiveCommutation);

static void BM_ReplayTrace(benchmark::State& state) {
  auto p = make_sphere("Csharp", 3);
  auto r = check_implication(p, parse_relation("z3 z2* z1 = z1 z2* z3"));
  for (auto _ : state) benchmark::DoNotOptimize(replay(r.trace, p));
}
BENCHMARK(BM_ReplayTrace);
