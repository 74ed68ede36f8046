#include <benchmark/benchmark.h>

#include "vig/prng.hpp"

namespace {

// Steady-state emission cost: one modular multiply per value.
void BM_PermutationNext(benchmark::State& state) {
  auto n = static_cast<std::uint64_t>(state.range(0));
  vig::PermutationCursor cursor{vig::PermutationGenerator::make(n)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cursor.next());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PermutationNext)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 24);

// One-time setup cost: prime search plus primitive-root search.
void BM_PermutationMake(benchmark::State& state) {
  auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(vig::PermutationGenerator::make(n));
  }
}
BENCHMARK(BM_PermutationMake)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 24);

// Rotating the start point is a single modular exponentiation.
void BM_PermutationPhase(benchmark::State& state) {
  vig::PermutationGenerator gen = vig::PermutationGenerator::make(1 << 20);
  std::uint64_t phase = 0;
  for (auto _ : state) {
    vig::PermutationCursor cursor{gen, ++phase};
    benchmark::DoNotOptimize(cursor.next());
  }
}
BENCHMARK(BM_PermutationPhase);

}  // namespace

BENCHMARK_MAIN();
