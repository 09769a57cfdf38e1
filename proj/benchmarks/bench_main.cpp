#include <benchmark/benchmark.h>

#include "grl/blowup.hpp"
#include "grl/cycle_space.hpp"
#include "grl/random.hpp"
#include "grl/removal.hpp"
#include "grl/solutions.hpp"

using namespace grl;

namespace {

std::vector<ElementSet> random_sets(std::size_t count, std::size_t n, double density,
                                    std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<ElementSet> sets;
  for (std::size_t i = 0; i < count; ++i) sets.push_back(random_element_set(rng, n, density));
  return sets;
}

void BM_CountSolutionsSingle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_cyclic(n);
  const auto sets = random_sets(4, n, 0.3, 1);
  const auto sys = make_single_equation(4, 0);
  for (auto _ : state) benchmark::DoNotOptimize(count_solutions(g, sets, sys));
}
BENCHMARK(BM_CountSolutionsSingle)->RangeMultiplier(4)->Range(16, 1024);

void BM_CountSolutionsTwoProducts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_dihedral(n / 2);
  const auto sets = random_sets(5, n, 0.3, 2);
  const EquationSystem sys = two_products_system();
  for (auto _ : state) benchmark::DoNotOptimize(count_solutions(g, sets, sys));
}
BENCHMARK(BM_CountSolutionsTwoProducts)->RangeMultiplier(2)->Range(8, 64);

void BM_CountCopiesCycle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_cyclic(n);
  const auto blowup = build_cycle_blowup(g, random_sets(3, n, 0.3, 3), 0);
  for (auto _ : state) benchmark::DoNotOptimize(count_copies(blowup));
  state.counters["arcs"] = static_cast<double>(blowup.arc_count());
}
BENCHMARK(BM_CountCopiesCycle)->RangeMultiplier(2)->Range(16, 256);

void BM_CountCopiesTwoProducts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_cyclic(n);
  const EquationSystem sys = two_products_system();
  const auto blowup =
      build_system_blowup(g, random_sets(5, n, 0.3, 4), two_products_graph(), sys);
  for (auto _ : state) benchmark::DoNotOptimize(count_copies(blowup));
}
BENCHMARK(BM_CountCopiesTwoProducts)->RangeMultiplier(2)->Range(8, 32);

void BM_GreedyHittingSet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_cyclic(n);
  const auto blowup = build_cycle_blowup(g, random_sets(3, n, 0.3, 5), 0);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_arc_hitting_set(blowup).size());
}
BENCHMARK(BM_GreedyHittingSet)->RangeMultiplier(2)->Range(16, 128);

void BM_ExactMinRemoval(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_cyclic(n);
  const auto sets = random_sets(3, n, 0.4, 6);
  const auto sys = make_single_equation(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(exact_min_removal(g, sets, sys).total);
}
BENCHMARK(BM_ExactMinRemoval)->DenseRange(7, 13, 3);

}  // namespace
BENCHMARK_MAIN();
