#include <benchmark/benchmark.h>

#include "causalbox/fixtures.hpp"
#include "causalbox/hypergraph.hpp"
#include "causalbox/nested_markov.hpp"

namespace causalbox {
namespace {

void BM_EnumerateConstraints(benchmark::State& state, const char* name) {
  const auto g = fixtures::graph(name);
  for (auto _ : state) benchmark::DoNotOptimize(enumerateConstraints(g));
}

void BM_EnumerateLiftedGyni(benchmark::State& state) {
  const auto h = buildHypergraph(fixtures::gyniGraph());
  for (auto _ : state) benchmark::DoNotOptimize(enumerateConstraints(h.base));
}

void BM_CheckNestedMediation(benchmark::State& state) {
  const auto g = fixtures::mediationGraph();
  std::vector<Rational> v(16);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(static_cast<long>(i + 1), 136);
  const Kernel p = Kernel::table({{"X", 2}, {"A", 2}, {"B", 2}, {"C", 2}}, v);
  for (auto _ : state) benchmark::DoNotOptimize(checkNested(p, g));
}

BENCHMARK_CAPTURE(BM_EnumerateConstraints, mediation, "mediation");
BENCHMARK_CAPTURE(BM_EnumerateConstraints, five_district, "five-district");
BENCHMARK(BM_EnumerateLiftedGyni);
BENCHMARK(BM_CheckNestedMediation);

}  // namespace
}  // namespace causalbox
