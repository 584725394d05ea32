#include <benchmark/benchmark.h>

#include "causalbox/fixtures.hpp"
#include "causalbox/polytope.hpp"

namespace causalbox {
namespace {

void BM_HVerticesGyni(benchmark::State& state) {
  const auto h = buildHypergraph(fixtures::gyniGraph());
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerateHVertices(h, jobs));
}

void BM_ClassicalVerticesGyni(benchmark::State& state) {
  const auto g = fixtures::gyniGraph();
  for (auto _ : state) benchmark::DoNotOptimize(enumerateClassicalVertices(g));
}

void BM_MaximizeChsh(benchmark::State& state) {
  const auto vertices = enumerateClassicalVertices(fixtures::chshGraph());
  const Functional f = chshFunctional();
  for (auto _ : state) benchmark::DoNotOptimize(maximizeFunctional(f, vertices));
}

BENCHMARK(BM_HVerticesGyni)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK(BM_ClassicalVerticesGyni);
BENCHMARK(BM_MaximizeChsh);

}  // namespace
}  // namespace causalbox
