#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalbox/bell.hpp"
#include "causalbox/graph.hpp"
#include "causalbox/hypergraph.hpp"
#include "causalbox/kernel.hpp"

namespace causalbox {

// A deterministic strategy and the 0/1 kernel it induces.
struct Vertex {
  // output name -> response, indexed by the code of the output's input-parent assignment
  std::map<std::string, std::vector<int>> strategy;
  Kernel table;
};

std::size_t hVertexCount(const BellScenario& s);

// All deterministic strategies of a Bell-type graph, outputs as mixed-radix digits
// (first output most significant). `jobs` > 1 splits the work across threads.
std::vector<Vertex> enumerateHVertices(const HyperDag& h, int jobs = 1);

// Projections of the H(G) vertices, deduplicated in first-occurrence order.
std::vector<Vertex> enumerateClassicalVertices(const CausalDag& g, int jobs = 1, const CopyNames& names = {});

struct ClassicalVerdict {
  bool member = false;
  std::vector<Rational> weights;  // one per vertex
  std::vector<Vertex> vertices;
};

// Convex-combination feasibility against the given vertices.
ClassicalVerdict classicalMember(const Kernel& p, const std::vector<Vertex>& vertices);
ClassicalVerdict classicalMember(const Kernel& p, const CausalDag& g, const CopyNames& names = {});

// Linear functional on kernels with a fixed variable layout.
struct Functional {
  std::vector<Variable> outcomes;
  std::vector<Variable> index;
  std::vector<Rational> coefficients;  // same layout as Kernel::values

  Rational apply(const Kernel& k) const;
};

Functional chshFunctional();
// Win probability of A=Y, B=Z, C=X under uniform inputs, on kernels p(a,b,c|x,y,z).
Functional gyniFunctional();

struct Maximum {
  Rational value;
  std::size_t argmax = 0;
};

Maximum maximizeFunctional(const Functional& f, const std::vector<Kernel>& vertices);
Maximum maximizeFunctional(const Functional& f, const std::vector<Vertex>& vertices);
// Same optimum through the LP over convex weights.
Rational lpMaximize(const Functional& f, const std::vector<Kernel>& vertices);

// 16 local boxes followed by the 8 PR boxes in (alpha, beta, gamma) order.
std::vector<Kernel> nsVertices();

struct NsDecomposition {
  std::optional<std::array<int, 3>> pr;
  Rational prWeight;
  std::vector<Rational> localWeights;  // 16 entries

  Kernel reconstruct() const;
};

// Throws NotNoSignalling if q signals; locals alone are tried before any PR box.
NsDecomposition decomposeNsBox(const Kernel& q);

}  // namespace causalbox
