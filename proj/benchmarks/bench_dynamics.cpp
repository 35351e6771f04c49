#include <benchmark/benchmark.h>

#include "orbitkit/analysis.hpp"
#include "orbitkit/corpus.hpp"
#include "orbitkit/finite_oracle.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/sensitivity.hpp"
#include "orbitkit/transition.hpp"

namespace {

using orbitkit::Scalar;

void BM_IterateFlip(benchmark::State& state) {
  const auto spec = orbitkit::builtin("flip");
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orbitkit::iterate(spec.map(), Scalar(3, 10), n));
}
BENCHMARK(BM_IterateFlip)->Arg(8)->Arg(64)->Arg(512);

// 2^(n-1) leaves for the devil pair away from its fixed points.
void BM_OrbitTreeDevil(benchmark::State& state) {
  const auto spec = orbitkit::builtin("devil_pair", {{"level", "4"}});
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orbitkit::orbit_tree(spec.map(), Scalar(1, 5), n));
}
BENCHMARK(BM_OrbitTreeDevil)->DenseRange(6, 14, 4);

void BM_TransitionGraph(benchmark::State& state) {
  const auto spec = orbitkit::builtin("double_tent_F");
  const Scalar eps(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orbitkit::transition_graph(spec.map(), eps));
}
BENCHMARK(BM_TransitionGraph)->Arg(8)->Arg(64)->Arg(256);

void BM_TransitivityProbe(benchmark::State& state) {
  const auto spec = orbitkit::builtin(state.range(0) == 0 ? "slide" : "double_tent_F");
  for (auto _ : state) benchmark::DoNotOptimize(orbitkit::transitivity_probe(spec.map(), Scalar(1, 8), 40));
}
BENCHMARK(BM_TransitivityProbe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SensitivityProbe(benchmark::State& state) {
  const auto spec = orbitkit::builtin("tent_aug_F");
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbitkit::sensitivity_probe(orbitkit::SensKind::sensitive, spec.map(), Scalar(2, 5)));
  }
}
BENCHMARK(BM_SensitivityProbe)->Unit(benchmark::kMillisecond);

void BM_FiniteOracle(benchmark::State& state) {
  const auto spec = orbitkit::builtin("convergent_sequence", {{"n", std::to_string(state.range(0))}});
  for (auto _ : state) benchmark::DoNotOptimize(orbitkit::finite_oracle(spec.system()));
}
BENCHMARK(BM_FiniteOracle)->Arg(3)->Arg(7)->Arg(11);

}  // namespace
