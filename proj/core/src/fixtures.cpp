#include "causalbox/fixtures.hpp"

namespace causalbox::fixtures {

namespace {

std::vector<Variable> bits(std::initializer_list<const char*> names) {
  std::vector<Variable> out;
  for (const char* n : names) out.push_back({n, 2});
  return out;
}

int respond(int f, int input) {
  switch (f) {
    case 0: return 0;
    case 1: return 1;
    case 2: return input;
    default: return 1 - input;
  }
}

}  // namespace

Kernel prBox(int alpha, int beta, int gamma) {
  for (int v : {alpha, beta, gamma})
    if (v != 0 && v != 1) throw IndexOutOfRange("PR box parameters are bits");
  std::vector<Rational> values(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma))
            values[(x * 2 + y) * 4 + a * 2 + b] = Rational(1, 2);
  return Kernel(bits({"A", "B"}), bits({"X", "Y"}), std::move(values));
}

Kernel localBox(int i) {
  if (i < 0 || i > 15) throw IndexOutOfRange("local box index " + std::to_string(i) + " outside 0..15");
  const int fa = i / 4;
  const int fb = i % 4;
  std::vector<Rational> values(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) values[(x * 2 + y) * 4 + respond(fa, x) * 2 + respond(fb, y)] = Rational(1);
  return Kernel(bits({"A", "B"}), bits({"X", "Y"}), std::move(values));
}

Kernel gyniBox() {
  std::vector<Rational> values(64);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
              const int f = ((1 ^ b ^ x ^ y ^ (x & y)) & (1 ^ c ^ z)) ^ (a & (1 ^ y ^ (c & y) ^ (b & (c ^ z))));
              if (f) values[((x * 2 + y) * 2 + z) * 8 + (a * 2 + b) * 2 + c] = Rational(1, 3);
            }
  return Kernel(bits({"A", "B", "C"}), bits({"X", "Y", "Z"}), std::move(values));
}

Kernel gyniProjected() {
  std::vector<Rational> values(16);
  const Rational third(1, 3);
  for (int abc : {0b000, 0b101, 0b110}) values[abc] = third;
  for (int abc : {0b011, 0b101, 0b110}) values[8 + abc] = third;
  return Kernel(bits({"A", "B", "C"}), bits({"X"}), std::move(values));
}

Kernel swappingBox() {
  std::vector<Rational> values(32);
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      for (int abc = 0; abc < 8; ++abc) {
        const int parity = (abc >> 2) ^ ((abc >> 1) & 1) ^ (abc & 1);
        if (parity == (x & z)) values[(x * 2 + z) * 8 + abc] = Rational(1, 4);
      }
  return Kernel(bits({"A", "B", "C"}), bits({"X", "Z"}), std::move(values));
}

CausalDag mediationGraph() {
  CausalDag g;
  g.addObserved("X").addObserved("A").addObserved("B").addObserved("C").addLatent("L");
  g.addEdge("X", "A").addEdge("A", "B").addEdge("B", "C").addEdge("L", "A").addEdge("L", "C");
  return g;
}

CausalDag chshGraph() {
  CausalDag g;
  g.addObserved("X").addObserved("Y").addObserved("A").addObserved("B").addLatent("L");
  g.addEdge("X", "A").addEdge("Y", "B").addEdge("L", "A").addEdge("L", "B");
  return g;
}

CausalDag instrumentalGraph() {
  CausalDag g;
  g.addObserved("X").addObserved("A").addObserved("B").addLatent("L");
  g.addEdge("X", "A").addEdge("A", "B").addEdge("L", "A").addEdge("L", "B");
  return g;
}

CausalDag gyniGraph() {
  CausalDag g;
  g.addObserved("X").addObserved("A").addObserved("B").addObserved("C").addLatent("L");
  g.addEdge("X", "A").addEdge("A", "B").addEdge("B", "C");
  g.addEdge("L", "A").addEdge("L", "B").addEdge("L", "C");
  return g;
}

CausalDag swappingGraph() {
  CausalDag g;
  g.addObserved("X").addObserved("Z").addObserved("A").addObserved("B").addObserved("C");
  g.addLatent("L1").addLatent("L2");
  g.addEdge("X", "A").addEdge("Z", "C");
  g.addEdge("L1", "A").addEdge("L1", "B").addEdge("L2", "B").addEdge("L2", "C");
  return g;
}

CausalDag triangleGraph() {
  CausalDag g;
  g.addObserved("A").addObserved("B").addObserved("C");
  g.addLatent("L1").addLatent("L2").addLatent("L3");
  g.addEdge("L1", "A").addEdge("L1", "B").addEdge("L2", "B").addEdge("L2", "C");
  g.addEdge("L3", "A").addEdge("L3", "C");
  return g;
}

CausalDag fiveDistrictGraph() {
  CausalDag g;
  for (const char* v : {"X", "Y", "A", "B", "C", "D", "E"}) g.addObserved(v);
  g.addLatent("L1").addLatent("L2").addLatent("L3");
  g.addEdge("X", "A").addEdge("Y", "C");
  g.addEdge("L1", "A").addEdge("L1", "B");
  g.addEdge("L2", "B").addEdge("L2", "C").addEdge("L2", "D");
  g.addEdge("L3", "C").addEdge("L3", "D").addEdge("L3", "E");
  return g;
}

CopyNames conventionalCopyNames() { return {{{"A", "B"}, "Y"}, {{"B", "C"}, "Z"}}; }

std::vector<std::string> graphNames() {
  return {"mediation", "chsh", "instrumental", "gyni", "swapping", "triangle", "five-district"};
}

std::vector<std::string> distributionNames() {
  return {"pr-box", "local-box", "gyni-box", "gyni-projected", "swapping-box"};
}

CausalDag graph(const std::string& name) {
  if (name == "mediation") return mediationGraph();
  if (name == "chsh") return chshGraph();
  if (name == "instrumental") return instrumentalGraph();
  if (name == "gyni") return gyniGraph();
  if (name == "swapping") return swappingGraph();
  if (name == "triangle") return triangleGraph();
  if (name == "five-district") return fiveDistrictGraph();
  throw ParseError("unknown graph fixture '" + name + "'");
}

}  // namespace causalbox::fixtures
