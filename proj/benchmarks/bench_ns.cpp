#include <benchmark/benchmark.h>

#include "causalbox/fixtures.hpp"
#include "causalbox/polytope.hpp"

namespace causalbox {
namespace {

void BM_DecomposeLocalMixture(benchmark::State& state) {
  const Kernel q = mix({{Rational(1, 2), fixtures::localBox(3)}, {Rational(1, 2), fixtures::localBox(12)}});
  for (auto _ : state) benchmark::DoNotOptimize(decomposeNsBox(q));
}

// Worst case: every PR box before (1,1,1) is tried and rejected.
void BM_DecomposeLastPrBox(benchmark::State& state) {
  const Kernel q = mix({{Rational(3, 5), fixtures::prBox(1, 1, 1)}, {Rational(2, 5), fixtures::localBox(7)}});
  for (auto _ : state) benchmark::DoNotOptimize(decomposeNsBox(q));
}

BENCHMARK(BM_DecomposeLocalMixture)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DecomposeLastPrBox)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace causalbox
