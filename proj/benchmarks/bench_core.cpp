#include <benchmark/benchmark.h>

#include "protocat/eqpres.hpp"
#include "protocat/groupsem.hpp"
#include "protocat/topth.hpp"

using namespace protocat;

static void BM_EnumerateFunctors(benchmark::State& state) {
  auto a = chain_category(static_cast<int>(state.range(0)));
  auto b = chain_category(4);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_functors(a, b).size());
}
BENCHMARK(BM_EnumerateFunctors)->DenseRange(1, 4);

static void BM_FinSet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(finset_category(static_cast<int>(state.range(0))).cat->num_morphisms());
}
BENCHMARK(BM_FinSet)->DenseRange(1, 4);

static void BM_KleisliModels(benchmark::State& state) {
  auto fs = finset_category(static_cast<int>(state.range(0)));
  auto t = maybe_monad();
  for (auto _ : state) benchmark::DoNotOptimize(compare_kleisli_models(t, fs).report.ok());
}
BENCHMARK(BM_KleisliModels)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_FreeForgetful(benchmark::State& state) {
  auto fs = finset_category(static_cast<int>(state.range(0)));
  auto t = monoid_writer(cyclic_group(2));
  for (auto _ : state) benchmark::DoNotOptimize(free_forgetful_structure(t, fs).report.ok());
}
BENCHMARK(BM_FreeForgetful)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_EnumerateMonoids(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_monoids(static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_EnumerateMonoids)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_RecognizeMonoid(benchmark::State& state) {
  auto fs = finset_category(2);
  auto m = cyclic_group(static_cast<int>(state.range(0)));
  auto th = e_of_monoid(m, fs).theory;
  for (auto _ : state) benchmark::DoNotOptimize(recognize_monoid_theory(th, fs).monoidal);
}
BENCHMARK(BM_RecognizeMonoid)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_NatEndomorphisms(benchmark::State& state) {
  auto g = cyclic_group(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nat_endomorphism_monoid(g, std::max(g.n, 6)).monoid.n);
}
BENCHMARK(BM_NatEndomorphisms)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_GroupModels(benchmark::State& state) {
  auto p = group_presentation();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_omega_models(p, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_GroupModels)->DenseRange(1, 3);

static void BM_CongruenceClosure(benchmark::State& state) {
  auto p = group_presentation();
  for (auto _ : state) benchmark::DoNotOptimize(congruence_closure(p, 2, static_cast<int>(state.range(0))).classes);
}
BENCHMARK(BM_CongruenceClosure)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_EnoughSubobjects(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto posets = enumerate_posets(n);
  for (auto _ : state) {
    int holds = 0;
    for (const auto& p : posets) holds += check_enough_subobjects(poset_category(n, [&](int x, int y) { return p[x * n + y] != 0; })).holds;
    benchmark::DoNotOptimize(holds);
  }
}
BENCHMARK(BM_EnoughSubobjects)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
