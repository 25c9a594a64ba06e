#include <benchmark/benchmark.h>

#include "fink/fink.hpp"

namespace {

using fink::BuiltinFamily;
using fink::SequenceStream;

fink::BlockSequence prefix(BuiltinFamily family, std::size_t horizon) {
  return SequenceStream::builtin(family, 2).truncate(horizon);
}

void BM_EnumerateSpan(benchmark::State& state) {
  const auto P = prefix(BuiltinFamily::example13_Q,
                        static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fink::enumerate_span(P, false));
  }
  state.counters["generators"] = static_cast<double>(P.size());
}
BENCHMARK(BM_EnumerateSpan)->DenseRange(5, 15, 2)->Unit(benchmark::kMicrosecond);

void BM_IsMember(benchmark::State& state) {
  const auto P = prefix(BuiltinFamily::example13_P, 4096);
  std::vector<std::pair<std::size_t, int>> entries{{0, 2}};
  for (std::size_t n = 1; n < 4096; n += 2) entries.emplace_back(n, 1);
  const auto target = fink::Block::from_pairs(2, entries);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fink::is_member(target, P, false));
  }
}
BENCHMARK(BM_IsMember);

void BM_IntersectSpans(benchmark::State& state) {
  const auto horizon = static_cast<std::size_t>(state.range(0));
  const auto P = prefix(BuiltinFamily::example13_P, horizon);
  const auto Q = prefix(BuiltinFamily::example13_Q, horizon);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fink::intersect_spans(P, Q));
  }
}
BENCHMARK(BM_IntersectSpans)->DenseRange(9, 21, 4)->Unit(benchmark::kMillisecond);

void BM_Diagonalization(benchmark::State& state) {
  const auto family = fink::validate_family(
      {SequenceStream::builtin(BuiltinFamily::example13_P, 2),
       SequenceStream::builtin(BuiltinFamily::example13_Q, 2),
       SequenceStream::builtin(BuiltinFamily::evens, 2)},
      1, 15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fink::run_diagonalization(family));
  }
}
BENCHMARK(BM_Diagonalization)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
