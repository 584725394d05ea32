#include <benchmark/benchmark.h>

#include "causalbox/bell.hpp"
#include "causalbox/fixtures.hpp"
#include "causalbox/polytope.hpp"

namespace causalbox {
namespace {

void BM_ClassicalMemberPrBox(benchmark::State& state) {
  const auto g = fixtures::chshGraph();
  const auto vertices = enumerateClassicalVertices(g);
  const Kernel pr = fixtures::prBox(0, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(classicalMember(pr, vertices));
}

void BM_ClassicalMemberGyni(benchmark::State& state) {
  const auto vertices = enumerateClassicalVertices(fixtures::gyniGraph());
  const Kernel p = fixtures::gyniProjected();
  for (auto _ : state) benchmark::DoNotOptimize(classicalMember(p, vertices));
}

// The lift LP has one unknown per lifted table entry plus t.
void BM_PsMemberGyni(benchmark::State& state) {
  const auto g = fixtures::gyniGraph();
  const Kernel p = fixtures::gyniProjected();
  for (auto _ : state) benchmark::DoNotOptimize(psMember(p, g));
}

void BM_PsMemberInstrumental(benchmark::State& state) {
  const auto g = fixtures::instrumentalGraph();
  const Kernel p = mix({{Rational(1, 3), enumerateClassicalVertices(g)[3].table},
                        {Rational(2, 3), enumerateClassicalVertices(g)[9].table}});
  for (auto _ : state) benchmark::DoNotOptimize(psMember(p, g));
}

BENCHMARK(BM_ClassicalMemberPrBox)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalMemberGyni)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsMemberGyni)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsMemberInstrumental)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace causalbox
