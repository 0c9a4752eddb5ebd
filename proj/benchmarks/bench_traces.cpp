#include <benchmark/benchmark.h>

#include "altrace/hurwitz.hpp"
#include "altrace/local_counts.hpp"
#include "altrace/murmur.hpp"
#include "altrace/newspace.hpp"
#include "altrace/trace.hpp"

namespace {

void BM_hurwitz_table(benchmark::State& state) {
  for (auto _ : state) {
    altrace::HurwitzTable table(state.range(0));
    benchmark::DoNotOptimize(table.twelve_h(state.range(0)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_hurwitz_table)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_count_C_closed(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  for (auto _ : state) {
    for (std::int64_t t = -20; t <= 20; ++t) benchmark::DoNotOptimize(altrace::count_C_closed(N, 1, t, 7));
  }
}
BENCHMARK(BM_count_C_closed)->Arg(30)->Arg(210)->Arg(997);

void BM_trace_full(benchmark::State& state) {
  const altrace::HurwitzTable table(4 * 1000 * 100);
  const altrace::TraceQuery q{2, state.range(0), 1, state.range(1)};
  for (auto _ : state) benchmark::DoNotOptimize(altrace::trace_full(q, table));
}
BENCHMARK(BM_trace_full)->Args({11, 2})->Args({997, 97})->Args({840, 97});

// Cold cache each iteration: the whole divisor-lattice recursion.
void BM_trace_new_cold(benchmark::State& state) {
  const altrace::HurwitzTable table(4 * 1000 * 100);
  for (auto _ : state) {
    const altrace::NewspaceContext ctx(table);
    benchmark::DoNotOptimize(altrace::trace_new(ctx, 2, state.range(0), 1, state.range(1)));
  }
}
BENCHMARK(BM_trace_new_cold)->Args({840, 97})->Args({720, 6})->Args({900, 12});

void BM_murmur_level(benchmark::State& state) {
  const altrace::HurwitzTable table(4 * 1000 * 100);
  const auto primes = altrace::primes_up_to(100);
  for (auto _ : state) {
    const altrace::NewspaceContext ctx(table);
    benchmark::DoNotOptimize(altrace::murmur_rows_for_level(ctx, 2, state.range(0), primes));
  }
}
BENCHMARK(BM_murmur_level)->Arg(389)->Arg(840)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
