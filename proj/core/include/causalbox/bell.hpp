#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalbox/graph.hpp"
#include "causalbox/hypergraph.hpp"
#include "causalbox/kernel.hpp"
#include "causalbox/linear_program.hpp"
#include "causalbox/nested_markov.hpp"

namespace causalbox {

// A Bell-type graph read as parties: observed roots are inputs, every other observed
// vertex is an output driven by its input parents and the shared latent.
struct BellScenario {
  std::vector<Variable> inputs;   // declaration order
  std::vector<Variable> outputs;  // declaration order
  std::vector<std::vector<std::string>> inputParents;  // per output, sorted
  bool sharedLatent = false;

  std::vector<std::string> inputNames() const;
  std::vector<std::string> outputNames() const;
};

// Throws MultiLatent for more than one latent vertex and UnsupportedGraph when the graph
// is not Bell-type or when several outputs exist and one of them has no latent parent.
BellScenario bellScenario(const CausalDag& dag);

// Marginal of the outputs in `outputs` at `outcome`, compared between two input rows that
// differ only in inputs none of those outputs listens to.
struct NsEquality {
  std::vector<int> outputs;  // positions in the scenario's output list
  Assignment outcome;        // values of those outputs
  std::size_t row = 0;       // input row with some non-parent inputs set
  std::size_t baseRow = 0;   // the same row with one of them reset to 0

  std::string str(const BellScenario& s) const;
};

std::vector<NsEquality> nsConstraints(const BellScenario& s);
std::vector<NsEquality> nsConstraints(const HyperDag& h);

// `q` must be a kernel over the scenario's outputs indexed by its inputs (any order).
bool nsMember(const Kernel& q, const BellScenario& s);
bool nsMember(const Kernel& q, const HyperDag& h);

// max_a sum_b max_x p(a,b|x) for a kernel p(a,b|x).
Rational instrumentalScore(const Kernel& p);

struct PsVerdict {
  enum class Status { Member, NotMember, Unsupported };
  Status status = Status::Unsupported;
  std::optional<Kernel> certificate;  // lifted kernel over the outputs given all inputs of H(G)
  Rational t;
  std::string reason;
};

// `p` is a kernel over the non-root observed vertices of g indexed by its observed roots.
PsVerdict psMember(const Kernel& p, const CausalDag& g, const CopyNames& names = {});

// Certificate mode: `lift` (a kernel over outputs given inputs of H(g), or a joint table)
// must satisfy every independence of H(g) and project back onto p.
PsVerdict checkLiftCertificate(const Kernel& p, const CausalDag& g, const Kernel& lift, const CopyNames& names = {});

// Joins a kernel over outputs given inputs with a uniform input distribution.
Kernel withUniformInputs(const Kernel& q);

}  // namespace causalbox
