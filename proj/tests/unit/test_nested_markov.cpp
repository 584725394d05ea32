#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "causalbox/errors.hpp"
#include "causalbox/fixtures.hpp"
#include "causalbox/hypergraph.hpp"
#include "causalbox/nested_markov.hpp"
#include "oracles.hpp"

using namespace causalbox;

namespace {

std::vector<std::string> vermaTexts(const std::vector<ConstraintRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (r.kind == ConstraintRecord::Kind::Verma) out.push_back(r.str());
  return out;
}

}  // namespace

TEST_CASE("district recipe follows the topological order") {
  const auto g = fixtures::mediationGraph();
  CHECK(districtRecipe(g, District{{"A", "C"}}).str() == "p(a|x) p(c|x,a,b)");
  CHECK(districtRecipe(g, District{{"B"}}).str() == "p(b|a)");
}

TEST_CASE("district kernel evaluates the recipe") {
  oracle::Rng rng(1);
  const auto g = fixtures::mediationGraph();
  const Kernel p = oracle::randomBayesNet(g, rng);
  const Kernel q = districtKernel(p, g, District{{"A", "C"}});
  CHECK(q.outcomeNames() == std::vector<std::string>{"A", "C"});
  CHECK(q.indexNames() == std::vector<std::string>{"X", "B"});
  CHECK(checkNormalized(q).empty());
  const Kernel pa = split(marginalizeTo(p, {"X", "A"}), {"X"});
  const Kernel pc = split(p, {"X", "A", "B"});
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) CHECK(q.at({a, c}, {x, b}) == pa.at(Assignment{a}, Assignment{x}) * pc.at({c}, {x, a, b}));
}

TEST_CASE("district kernel rejects undefined conditionals") {
  const auto g = fixtures::mediationGraph();
  std::vector<Rational> v(16);
  v[0] = Rational(1);  // all mass on X=A=B=C=0
  const Kernel p = Kernel::table({{"X", 2}, {"A", 2}, {"B", 2}, {"C", 2}}, v);
  CHECK_THROWS_AS(districtKernel(p, g, District{{"A", "C"}}), ZeroDivision);
}

TEST_CASE("mediation graph has one Verma constraint") {
  const auto records = enumerateConstraints(fixtures::mediationGraph());
  REQUIRE(records.size() == 2);
  CHECK(records[0].kind == ConstraintRecord::Kind::CI);
  CHECK(records[0].str() == "CI: X ⟂ B | A");
  CHECK(records[1].str() == "VERMA: sum_{a} p(a|x) p(c|x,a,b) ⟂ x");
  CHECK(records[1].verma.independentOf == std::vector<std::string>{"X"});
}

TEST_CASE("graphs without Verma constraints") {
  for (const char* name : {"chsh", "instrumental", "gyni", "swapping", "triangle"}) {
    CAPTURE(name);
    CHECK(vermaTexts(enumerateConstraints(fixtures::graph(name))).empty());
  }
}

TEST_CASE("constraints of the five-vertex district graph") {
  const auto records = enumerateConstraints(fixtures::fiveDistrictGraph());
  CHECK(records.size() >= ciConstraints(fixtures::fiveDistrictGraph()).size());
  oracle::Rng rng(4);
  for (int trial = 0; trial < 5; ++trial)
    CHECK(checkNested(oracle::randomBayesNet(fixtures::fiveDistrictGraph(), rng, 2), fixtures::fiveDistrictGraph())
              .member);
}

TEST_CASE("Bayesian network distributions satisfy the nested Markov constraints") {
  oracle::Rng rng(17);
  const auto g = fixtures::mediationGraph();
  for (int trial = 0; trial < 20; ++trial) {
    const auto verdict = checkNested(oracle::randomBayesNet(g, rng), g);
    CHECK(verdict.member);
    CHECK(verdict.indeterminate.empty());
  }
}

TEST_CASE("a distribution outside the model violates the Verma constraint") {
  oracle::Rng rng(23);
  const auto g = fixtures::mediationGraph();
  // Make X -> C direct: X and B stay independent given A, the Verma constraint breaks.
  CausalDag direct = g;
  direct.addEdge("X", "C");
  int caught = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Kernel p = oracle::randomBayesNet(direct, rng);
    const auto verdict = checkNested(p, g);
    for (const auto& v : verdict.violations)
      if (v.record.kind == ConstraintRecord::Kind::Verma) {
        ++caught;
        CHECK(v.witness.count("X") == 1);
      }
  }
  CHECK(caught >= 9);
}

TEST_CASE("independence check reports a witness") {
  oracle::Rng rng(29);
  CausalDag full;
  full.addObserved("X").addObserved("A").addObserved("B").addObserved("C");
  full.addEdge("X", "A").addEdge("A", "B").addEdge("B", "C").addEdge("X", "B").addEdge("A", "C");
  const auto verdict = checkIndependences(oracle::randomBayesNet(full, rng), fixtures::mediationGraph());
  REQUIRE_FALSE(verdict.member);
  CHECK(verdict.violations.front().record.str() == "CI: X ⟂ B | A");
  CHECK(verdict.violations.front().witness.count("A") == 1);
}

TEST_CASE("zero-probability cells make records indeterminate rather than violated") {
  std::vector<Rational> v(16);
  for (int x = 0; x < 2; ++x) v[x * 8] = Rational(1, 2);  // A=B=C=0 always
  const Kernel p = Kernel::table({{"X", 2}, {"A", 2}, {"B", 2}, {"C", 2}}, v);
  const auto verdict = checkNested(p, fixtures::mediationGraph());
  CHECK(verdict.member);
}

TEST_CASE("table variables must match the observed vertices") {
  CHECK_THROWS_AS(checkNested(fixtures::gyniProjected(), fixtures::mediationGraph()), InvalidKernel);
}

TEST_CASE("district kernels do not depend on the topological order") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 4;
    const auto g = oracle::randomDag(rng, n, 1 + trial % 2);
    const Kernel p = oracle::randomBayesNet(g, rng, 2);
    const auto orders = allTopologicalOrders(g);
    for (const auto& d : districts(toMdag(g))) {
      const Kernel reference = districtKernel(p, g, d, orders.front());
      for (const auto& order : orders) CHECK(sameKernel(districtKernel(p, g, d, order), reference));
    }
  }
}

TEST_CASE("lifted graphs carry only independence constraints") {
  for (const char* name : {"mediation", "instrumental", "gyni", "swapping"}) {
    CAPTURE(name);
    const auto h = buildHypergraph(fixtures::graph(name));
    const auto records = enumerateConstraints(h.base);
    CHECK(vermaTexts(records).empty());
    CHECK(records.size() == ciConstraints(h.base).size());
  }
}
