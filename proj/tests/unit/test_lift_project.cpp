#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "causalbox/bell.hpp"
#include "causalbox/errors.hpp"
#include "causalbox/fixtures.hpp"
#include "causalbox/polytope.hpp"
#include "oracles.hpp"

using namespace causalbox;

using Names = std::vector<std::string>;

namespace {

Kernel scoreTwoTable() {
  std::vector<Rational> v(8);
  v[0 * 4 + 0] = Rational(1);  // x=0: a=0,b=0
  v[1 * 4 + 1] = Rational(1);  // x=1: a=0,b=1
  return Kernel({{"A", 2}, {"B", 2}}, {{"X", 2}}, v);
}

}  // namespace

TEST_CASE("Bell scenarios") {
  const auto s = bellScenario(fixtures::chshGraph());
  CHECK(s.inputNames() == Names{"X", "Y"});
  CHECK(s.outputNames() == Names{"A", "B"});
  CHECK(s.inputParents == std::vector<Names>{{"X"}, {"Y"}});
  CHECK(s.sharedLatent);

  const auto h = buildHypergraph(fixtures::gyniGraph(), fixtures::conventionalCopyNames());
  const auto gs = bellScenario(h.base);
  CHECK(gs.inputNames() == Names{"X", "Y", "Z"});
  CHECK(gs.inputParents == std::vector<Names>{{"X"}, {"Y"}, {"Z"}});

  CHECK_THROWS_AS(bellScenario(fixtures::swappingGraph()), MultiLatent);
  CHECK_THROWS_AS(bellScenario(fixtures::instrumentalGraph()), UnsupportedGraph);
  CausalDag partial;
  partial.addObserved("X").addObserved("Y").addObserved("A").addObserved("B").addLatent("L");
  partial.addEdge("X", "A").addEdge("Y", "B").addEdge("L", "A");
  CHECK_THROWS_AS(bellScenario(partial), UnsupportedGraph);
}

TEST_CASE("no-signalling equalities") {
  const auto s = bellScenario(fixtures::chshGraph());
  CHECK(nsConstraints(s).size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(nsMember(oracle::prBox(k >> 2, (k >> 1) & 1, k & 1), s));
  for (int i = 0; i < 16; ++i) CHECK(nsMember(fixtures::localBox(i), s));

  // B copies X: Alice signals to Bob.
  std::vector<Rational> v(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) v[(x * 2 + y) * 4 + x] = Rational(1);
  CHECK_FALSE(nsMember(Kernel({{"A", 2}, {"B", 2}}, {{"X", 2}, {"Y", 2}}, v), s));

  const auto h = buildHypergraph(fixtures::gyniGraph(), fixtures::conventionalCopyNames());
  CHECK(nsMember(fixtures::gyniBox(), h));
}

TEST_CASE("instrumental score") {
  CHECK(instrumentalScore(scoreTwoTable()) == Rational(2));
  CHECK(instrumentalScore(scoreTwoTable()) == oracle::instrumentalValue(scoreTwoTable()));
  oracle::Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Kernel p = oracle::instrumentalProjection(oracle::randomNsBox(rng));
    CHECK(instrumentalScore(p) == oracle::instrumentalValue(p));
  }
}

TEST_CASE("post-selection of the GYNI box") {
  const auto h = buildHypergraph(fixtures::gyniGraph(), fixtures::conventionalCopyNames());
  CHECK(projectKernel(fixtures::gyniBox(), h) == fixtures::gyniProjected());
  const Kernel table = withUniformInputs(fixtures::gyniBox());
  CHECK(sameKernel(project(table, h), withUniformInputs(fixtures::gyniProjected())));
}

TEST_CASE("post-selection rejects a null event") {
  const auto h = buildHypergraph(fixtures::instrumentalGraph(), {{{"A", "B"}, "Y"}});
  // A is always 0 while its copy Y is always 1.
  std::vector<Rational> t(16);
  t[encode({{"A", 2}, {"B", 2}, {"X", 2}, {"Y", 2}}, {0, 0, 0, 1})] = Rational(1, 2);
  t[encode({{"A", 2}, {"B", 2}, {"X", 2}, {"Y", 2}}, {0, 1, 1, 1})] = Rational(1, 2);
  const Kernel lifted = Kernel::table({{"A", 2}, {"B", 2}, {"X", 2}, {"Y", 2}}, t);
  CHECK_THROWS_AS(project(lifted, h), ZeroSelectionProbability);
}

TEST_CASE("projections of no-signalling boxes are post-selection members") {
  const auto g = fixtures::instrumentalGraph();
  oracle::Rng rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    const Kernel p = oracle::instrumentalProjection(oracle::randomNsBox(rng));
    const auto verdict = psMember(p, g);
    REQUIRE(verdict.status == PsVerdict::Status::Member);
    CHECK(verdict.t == Rational(1));
    const auto h = buildHypergraph(g);
    CHECK(sameKernel(projectKernel(*verdict.certificate, h), p));
    CHECK(checkLiftCertificate(p, g, *verdict.certificate).status == PsVerdict::Status::Member);
  }
}

TEST_CASE("the score-two table has no lift") {
  const auto verdict = psMember(scoreTwoTable(), fixtures::instrumentalGraph());
  CHECK(verdict.status == PsVerdict::Status::NotMember);
  CHECK(verdict.reason == "LP infeasible");
}

TEST_CASE("PR box is a post-selection member of the CHSH graph") {
  const auto verdict = psMember(fixtures::prBox(0, 0, 0), fixtures::chshGraph());
  REQUIRE(verdict.status == PsVerdict::Status::Member);
  CHECK(sameKernel(*verdict.certificate, fixtures::prBox(0, 0, 0)));
}

TEST_CASE("several latents are unsupported without a certificate") {
  const auto verdict = psMember(fixtures::swappingBox(), fixtures::swappingGraph());
  CHECK(verdict.status == PsVerdict::Status::Unsupported);
  CHECK_FALSE(verdict.reason.empty());

  const auto certified = checkLiftCertificate(fixtures::swappingBox(), fixtures::swappingGraph(), fixtures::swappingBox());
  CHECK(certified.status == PsVerdict::Status::Member);
}

TEST_CASE("certificates that fail are rejected") {
  const auto g = fixtures::gyniGraph();
  const auto names = fixtures::conventionalCopyNames();
  CHECK(checkLiftCertificate(fixtures::gyniProjected(), g, fixtures::gyniBox(), names).status ==
        PsVerdict::Status::Member);
  // A lift of a different distribution does not project onto the target.
  const Kernel other =
      mix({{Rational(1, 2), fixtures::gyniBox()},
           {Rational(1, 2), enumerateHVertices(buildHypergraph(g, names)).front().table}});
  const auto wrong = checkLiftCertificate(fixtures::gyniProjected(), g, other, names);
  CHECK(wrong.status == PsVerdict::Status::NotMember);
}

TEST_CASE("uniform inputs") {
  const Kernel t = withUniformInputs(fixtures::prBox(0, 0, 0));
  CHECK(t.isTable());
  CHECK(t.outcomeNames() == Names{"A", "B", "X", "Y"});
  CHECK(t.at({0, 1, 1, 1}, {}) == Rational(1, 8));
  CHECK(t.at({0, 0, 1, 1}, {}) == Rational(0));
  CHECK(withUniformInputs(t) == t);
}
