#include <benchmark/benchmark.h>

#include "orbitkit/closed_set.hpp"

namespace {

using orbitkit::ClosedSet;
using orbitkit::Interval;
using orbitkit::Scalar;

// n points k/(2n+1) interleaved with n short intervals; components never touch.
ClosedSet comb(std::size_t n, long shift) {
  std::vector<Interval> parts;
  const long den = static_cast<long>(4 * n + 3);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(4 * i) + shift;
    if (i % 2 == 0) {
      parts.push_back(Interval::point(orbitkit::ratio(k, den)));
    } else {
      parts.push_back({orbitkit::ratio(k, den), orbitkit::ratio(k + 1, den)});
    }
  }
  return ClosedSet::canonicalize(parts);
}

void BM_Canonicalize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Interval> parts;
  for (std::size_t i = n; i-- > 0;) parts.push_back({orbitkit::ratio(static_cast<long>(i), static_cast<long>(n + 1)),
                                                     orbitkit::ratio(static_cast<long>(2 * i + 1), static_cast<long>(2 * n + 2))});
  for (auto _ : state) benchmark::DoNotOptimize(ClosedSet::canonicalize(parts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Canonicalize)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Hausdorff(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ClosedSet a = comb(n, 1);
  const ClosedSet b = comb(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(orbitkit::hausdorff(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hausdorff)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Union(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ClosedSet a = comb(n, 1);
  const ClosedSet b = comb(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(orbitkit::set_union(a, b));
}
BENCHMARK(BM_Union)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace
