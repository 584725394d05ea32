#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "causalbox/errors.hpp"
#include "causalbox/fixtures.hpp"
#include "causalbox/io.hpp"
#include "causalbox/kernel.hpp"
#include "causalbox/rational.hpp"
#include "oracles.hpp"

using namespace causalbox;

using Names = std::vector<std::string>;

namespace {

Kernel randomTable(oracle::Rng& rng, const std::vector<Variable>& vars) {
  return Kernel::table(vars, oracle::randomWeights(rng, assignmentCount(vars)));
}

const std::vector<Variable> kXAB{{"X", 2}, {"A", 3}, {"B", 2}};

}  // namespace

TEST_CASE("rationals are kept in lowest terms") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational::parse("-6/9").str() == "-2/3");
  CHECK(Rational::parse("5") == Rational(5));
  CHECK_THROWS_AS(Rational::parse("6/-9"), ParseError);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3).sign() == -1);
  CHECK(Rational(3, 4).toDouble() == doctest::Approx(0.75));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("0.5"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
}

TEST_CASE("rationals do not overflow") {
  Rational x(1);
  for (int i = 0; i < 200; ++i) x *= Rational(3, 2);
  for (int i = 0; i < 200; ++i) x /= Rational(3, 2);
  CHECK(x == Rational(1));
}

TEST_CASE("mixed-radix encoding, first variable most significant") {
  CHECK(assignmentCount(kXAB) == 12);
  CHECK(encode(kXAB, {1, 2, 1}) == 11);
  CHECK(encode(kXAB, {0, 1, 0}) == 2);
  CHECK(decode(kXAB, 7) == Assignment{1, 0, 1});
  for (std::size_t c = 0; c < 12; ++c) CHECK(encode(kXAB, decode(kXAB, c)) == c);
}

TEST_CASE("kernel construction validates") {
  CHECK_NOTHROW(Kernel({{"A", 2}}, {{"X", 2}}, {Rational(1), 0, Rational(1, 2), Rational(1, 2)}));
  CHECK_THROWS_AS(Kernel({{"A", 2}}, {{"X", 2}}, {Rational(1), 0, Rational(1, 2), Rational(1, 3)}), InvalidKernel);
  CHECK_THROWS_AS(Kernel({{"A", 2}}, {}, {Rational(3, 2), Rational(-1, 2)}), InvalidKernel);
  CHECK_THROWS_AS(Kernel({{"A", 2}}, {}, {Rational(1)}), InvalidKernel);
  CHECK_THROWS_AS(Kernel({{"A", 2}}, {{"A", 2}}, {1, 0, 1, 0}), InvalidKernel);
  CHECK_THROWS_AS(Kernel({{"A", 0}}, {}, {}), InvalidKernel);
}

TEST_CASE("lookup by name") {
  const Kernel pr = fixtures::prBox(0, 0, 0);
  CHECK(pr.value({{"A", 1}, {"B", 1}, {"X", 0}, {"Y", 1}}) == Rational(1, 2));
  CHECK(pr.value({{"A", 1}, {"B", 1}, {"X", 1}, {"Y", 1}}) == Rational(0));
  CHECK_THROWS_AS(pr.value({{"A", 1}, {"B", 1}, {"X", 1}}), UnknownVariable);
  CHECK_THROWS_AS(pr.value({{"A", 2}, {"B", 1}, {"X", 1}, {"Y", 0}}), IndexOutOfRange);
  CHECK(pr.cardinality("Y") == 2);
  CHECK_THROWS_AS(pr.cardinality("Q"), UnknownVariable);
}

TEST_CASE("marginalize sums out variables") {
  oracle::Rng rng(3);
  const Kernel p = randomTable(rng, kXAB);
  const Kernel m = marginalize(p, {"A"});
  CHECK(m.outcomeNames() == Names{"X", "B"});
  for (int x = 0; x < 2; ++x)
    for (int b = 0; b < 2; ++b) {
      Rational s;
      for (int a = 0; a < 3; ++a) s += p.at({x, a, b}, {});
      CHECK(m.at({x, b}, {}) == s);
    }
  CHECK(sameKernel(marginalizeTo(p, {"B", "X"}), m));
  CHECK_THROWS_AS(marginalize(p, {"Q"}), UnknownVariable);
  CHECK(checkNormalized(m).empty());
}

TEST_CASE("condition and split") {
  oracle::Rng rng(5);
  const Kernel p = randomTable(rng, kXAB);
  const Kernel c = condition(p, {{"X", 1}});
  CHECK(c.outcomeNames() == Names{"A", "B"});
  const Rational px = marginalizeTo(p, {"X"}).at(Assignment{1}, Assignment{});
  CHECK(c.at({2, 1}, {}) == p.at({1, 2, 1}, {}) / px);

  const Kernel q = split(p, {"X"});
  CHECK(q.indexNames() == Names{"X"});
  CHECK(q.at({2, 1}, {1}) == c.at({2, 1}, {}));
  CHECK(sameKernel(joint(q, marginalizeTo(p, {"X"})), p));

  const Kernel degenerate = Kernel::table({{"X", 2}, {"A", 2}}, {Rational(1, 2), Rational(1, 2), 0, 0});
  CHECK_THROWS_AS(condition(degenerate, {{"X", 1}}), ZeroProbabilityEvent);
  try {
    split(degenerate, {"X"});
    FAIL("expected ZeroProbabilityEvent");
  } catch (const ZeroProbabilityEvent& e) {
    CHECK(e.index() == NamedAssignment{{"X", 1}});
  }
}

TEST_CASE("reorder permutes without changing entries") {
  const Kernel pr = fixtures::prBox(1, 0, 1);
  const Kernel r = reorder(pr, {"B", "A"}, {"Y", "X"});
  CHECK(r.outcomeNames() == Names{"B", "A"});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(r.at({b, a}, {y, x}) == pr.at({a, b}, {x, y}));
  CHECK(sameKernel(r, pr));
  CHECK_FALSE(sameKernel(pr, fixtures::prBox(0, 0, 0)));
  CHECK_THROWS(reorder(pr, {"A"}, {"X", "Y"}));
}

TEST_CASE("conditional independence checks are exact") {
  oracle::Rng rng(11);
  // X -> A -> B chain: X independent of B given A
  const Kernel chain = oracle::randomBayesNet(
      CausalDag().addObserved("X").addObserved("A").addObserved("B").addEdge("X", "A").addEdge("A", "B"), rng);
  CHECK(ciHolds(chain, {"X"}, {"B"}, {"A"}));
  CHECK_FALSE(ciHolds(chain, {"X"}, {"B"}, {}));
  const auto w = ciWitness(chain, {"X"}, {"B"}, {});
  REQUIRE(w.has_value());
  CHECK(w->size() == 2);
  CHECK_THROWS(ciHolds(chain, {"X"}, {"X"}, {}));
}

TEST_CASE("uniform tables and mixtures") {
  const Kernel u = uniformTable({{"X", 2}, {"Y", 3}});
  CHECK(u.values() == std::vector<Rational>(6, Rational(1, 6)));
  const Kernel m = mix({{Rational(1, 2), fixtures::prBox(0, 0, 0)}, {Rational(1, 2), fixtures::localBox(0)}});
  CHECK(checkNormalized(m).empty());
  CHECK(m.at({0, 0}, {1, 1}) == Rational(1, 2));
  CHECK_THROWS_AS(mix({{Rational(1), fixtures::prBox(0, 0, 0)}, {Rational(0), fixtures::gyniProjected()}}),
                  InvalidKernel);
}

TEST_CASE("fixture boxes match their formulas") {
  for (int k = 0; k < 8; ++k) CHECK(fixtures::prBox(k >> 2, (k >> 1) & 1, k & 1) == oracle::prBox(k >> 2, (k >> 1) & 1, k & 1));
  for (int i = 0; i < 16; ++i) CHECK(fixtures::localBox(i) == oracle::deterministicBox(i / 4, i % 4));
  CHECK_THROWS_AS(fixtures::localBox(16), IndexOutOfRange);

  const Kernel gp = fixtures::gyniProjected();
  for (const char* abc : {"000", "101", "110"})
    CHECK(gp.at({abc[0] - '0', abc[1] - '0', abc[2] - '0'}, {0}) == Rational(1, 3));
  for (const char* abc : {"011", "101", "110"})
    CHECK(gp.at({abc[0] - '0', abc[1] - '0', abc[2] - '0'}, {1}) == Rational(1, 3));

  const Kernel sw = fixtures::swappingBox();
  for (std::size_t i = 0; i < sw.values().size(); ++i) {
    const auto out = decode(sw.outcomes(), i % 8), in = decode(sw.index(), i / 8);
    CHECK(sw.values()[i] == ((out[0] ^ out[1] ^ out[2]) == (in[0] & in[1]) ? Rational(1, 4) : Rational(0)));
  }
}

TEST_CASE("CHSH score") {
  const Kernel uniform = uniformTable({{"X", 2}, {"Y", 2}});
  CHECK(chshScore(fixtures::prBox(0, 0, 0), uniform) == Rational(1));
  CHECK(chshScore(fixtures::prBox(0, 0, 1), uniform) == Rational(0));
  CHECK(chshScore(fixtures::localBox(0), uniform) == Rational(3, 4));
  CHECK_THROWS_AS(chshScore(fixtures::gyniProjected(), uniform), CardinalityMismatch);
}

TEST_CASE("distribution documents round-trip") {
  for (const Kernel& k : {fixtures::prBox(1, 1, 0), fixtures::gyniProjected(), fixtures::swappingBox(),
                          Kernel::table(kXAB, std::vector<Rational>(12, Rational(1, 12)))}) {
    const Kernel back = parseDistribution(writeDistribution(k));
    CHECK(back == k);
  }
  const Kernel file = readDistributionFile(std::string(CAUSALBOX_TEST_DATA) + "/pr_box.dist");
  CHECK(file == fixtures::prBox(0, 0, 0));
}

TEST_CASE("distribution documents report their errors") {
  CHECK_THROWS_AS(parseDistribution("{"), ParseError);
  CHECK_THROWS_AS(parseDistribution(R"({"variables": [{"name": "A", "cardinality": 2}], "table": {"0": "1/3"}})"),
                  ParseError);
  CHECK_THROWS_AS(
      parseDistribution(R"({"variables": [{"name": "A", "cardinality": 2}], "table": {"0": "1", "5": "0"}})"),
      ParseError);
  CHECK_THROWS_AS(parseDistribution(R"({"variables": [{"name": "A"}], "table": {}})"), ParseError);
  CHECK_THROWS_AS(readDistributionFile("/nonexistent/file.dist"), ParseError);
}

TEST_CASE("graph documents round-trip") {
  for (const auto& name : fixtures::graphNames()) {
    const auto g = fixtures::graph(name);
    const auto back = parseGraph(writeGraph(g));
    CHECK(back.edges() == g.edges());
    CHECK(back.observed() == g.observed());
    CHECK(back.latents() == g.latents());
  }
  try {
    readGraphFile(std::string(CAUSALBOX_TEST_DATA) + "/missing_cardinality.graph");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("vertices[0].cardinality") != std::string::npos);
  }
  const auto cyclic = readGraphFile(std::string(CAUSALBOX_TEST_DATA) + "/cyclic.graph");
  CHECK_FALSE(validate(cyclic).ok());
}

TEST_CASE("operations keep kernels normalized") {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Kernel p = randomTable(rng, kXAB);
    CHECK(checkNormalized(marginalize(p, {"X"})).empty());
    CHECK(checkNormalized(condition(p, {{"A", trial % 3}})).empty());
    CHECK(checkNormalized(split(p, {"A", "X"})).empty());
    CHECK(checkNormalized(reorder(p, {"B", "X", "A"}, {})).empty());
    CHECK(checkNormalized(joint(split(p, {"B"}), uniformTable({{"B", 2}}))).empty());
  }
}

TEST_CASE("conditioning commutes with marginalizing other variables") {
  oracle::Rng rng(41);
  const std::vector<Variable> vars{{"W", 2}, {"X", 2}, {"Y", 2}, {"Z", 2}};
  for (int trial = 0; trial < 25; ++trial) {
    const Kernel p = randomTable(rng, vars);
    const NamedAssignment e{{"W", trial % 2}};
    CHECK(sameKernel(condition(marginalize(p, {"Y"}), e), marginalize(condition(p, e), {"Y"})));
  }
}

TEST_CASE("ciHolds matches the product definition entry by entry") {
  oracle::Rng rng(43);
  const std::vector<Variable> vars{{"A", 2}, {"B", 2}, {"Z", 2}};
  auto brute = [&](const Kernel& p) {
    // p(a,b,z) p(z) == p(a,z) p(b,z) for every a, b, z, summing raw entries
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int z = 0; z < 2; ++z) {
          Rational pz, paz, pbz;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
              pz += p.values()[i * 4 + j * 2 + z];
              if (i == a) paz += p.values()[i * 4 + j * 2 + z];
              if (j == b) pbz += p.values()[i * 4 + j * 2 + z];
            }
          if (p.values()[a * 4 + b * 2 + z] * pz != paz * pbz) return false;
        }
    return true;
  };
  CausalDag fork;
  fork.addObserved("A").addObserved("B").addObserved("Z").addEdge("Z", "A").addEdge("Z", "B");
  for (int trial = 0; trial < 30; ++trial) {
    const Kernel p = trial % 2 ? randomTable(rng, vars) : oracle::randomBayesNet(fork, rng);
    CHECK(ciHolds(p, {"A"}, {"B"}, {"Z"}) == brute(p));
    CHECK(ciHolds(p, {"B"}, {"A"}, {"Z"}) == brute(p));
  }
}
