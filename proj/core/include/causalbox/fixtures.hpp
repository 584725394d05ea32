#pragma once

#include <string>
#include <vector>

#include "causalbox/graph.hpp"
#include "causalbox/hypergraph.hpp"
#include "causalbox/kernel.hpp"

namespace causalbox::fixtures {

// p(a,b|x,y) = 1/2 when a xor b = xy xor alpha x xor beta y xor gamma.
Kernel prBox(int alpha, int beta, int gamma);

// Deterministic box i = 4 fA + fB, where each party's response f is
// 0: constant 0, 1: constant 1, 2: copy the input, 3: negate the input.
Kernel localBox(int i);

// Tripartite no-signalling box p(a,b,c|x,y,z) whose projection with y=a, z=b wins
// the guess-your-neighbour's-input game on the chain graph with certainty.
Kernel gyniBox();
// Its projection p(a,b,c|x).
Kernel gyniProjected();

// p(a,b,c|x,z) = 1/4 when a xor b xor c = xz.
Kernel swappingBox();

CausalDag mediationGraph();
CausalDag chshGraph();
CausalDag instrumentalGraph();
CausalDag gyniGraph();
CausalDag swappingGraph();
CausalDag triangleGraph();
// Two inputs feeding a five-vertex district.
CausalDag fiveDistrictGraph();

// Copy names matching the single-letter conventions (Y copies A, Z copies B).
CopyNames conventionalCopyNames();

// Names accepted by `graph(name)` and `distribution(name)`.
std::vector<std::string> graphNames();
std::vector<std::string> distributionNames();
CausalDag graph(const std::string& name);

}  // namespace causalbox::fixtures
