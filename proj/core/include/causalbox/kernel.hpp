#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causalbox/errors.hpp"
#include "causalbox/hypergraph.hpp"
#include "causalbox/rational.hpp"

namespace causalbox {

struct Variable {
  std::string name;
  int cardinality = 2;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using Assignment = std::vector<int>;

// Number of joint assignments of `vars`.
std::size_t assignmentCount(const std::vector<Variable>& vars);
// Mixed-radix encoding, first variable most significant.
std::size_t encode(const std::vector<Variable>& vars, const Assignment& values);
Assignment decode(const std::vector<Variable>& vars, std::size_t code);

// A conditional distribution q(outcomes | index). Entries are stored row-major: one row per
// index assignment, one column per outcome assignment. A probability table has no index.
class Kernel {
 public:
  Kernel() = default;
  // Throws InvalidKernel unless every entry is nonnegative and every row sums to exactly 1.
  Kernel(std::vector<Variable> outcomes, std::vector<Variable> index, std::vector<Rational> values);

  static Kernel table(std::vector<Variable> vars, std::vector<Rational> values) {
    return Kernel(std::move(vars), {}, std::move(values));
  }
  // Skips the normalization check; for internal producers that guarantee it.
  static Kernel trusted(std::vector<Variable> outcomes, std::vector<Variable> index, std::vector<Rational> values);

  const std::vector<Variable>& outcomes() const { return outcomes_; }
  const std::vector<Variable>& index() const { return index_; }
  const std::vector<Rational>& values() const { return values_; }
  bool isTable() const { return index_.empty(); }

  std::size_t outcomeCount() const { return assignmentCount(outcomes_); }
  std::size_t indexCount() const { return assignmentCount(index_); }

  std::vector<std::string> outcomeNames() const;
  std::vector<std::string> indexNames() const;
  // Outcomes followed by index variables.
  std::vector<Variable> allVariables() const;
  bool hasVariable(const std::string& name) const;
  int cardinality(const std::string& name) const;

  const Rational& at(const Assignment& outcome, const Assignment& idx) const {
    return values_[encode(index_, idx) * outcomeCount() + encode(outcomes_, outcome)];
  }
  const Rational& at(std::size_t row, std::size_t col) const { return values_[row * outcomeCount() + col]; }
  // Looks up every outcome and index variable by name.
  const Rational& value(const NamedAssignment& assignment) const;

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  std::vector<Variable> outcomes_;
  std::vector<Variable> index_;
  std::vector<Rational> values_;
};

// Row normalization and nonnegativity; an empty string means the kernel is valid.
std::string checkNormalized(const Kernel& k);

Kernel marginalize(const Kernel& k, const std::vector<std::string>& drop);
Kernel marginalizeTo(const Kernel& k, const std::vector<std::string>& keep);
// Conditions on a partial outcome assignment; the conditioned variables disappear.
Kernel condition(const Kernel& k, const NamedAssignment& event);
// Permutes variables; `outcomes` and `index` must be permutations of the current lists.
Kernel reorder(const Kernel& k, const std::vector<std::string>& outcomes, const std::vector<std::string>& index);

// True when the tables agree after aligning variable order.
bool sameKernel(const Kernel& a, const Kernel& b);

bool ciHolds(const Kernel& p, const std::vector<std::string>& a, const std::vector<std::string>& b,
             const std::vector<std::string>& z);
// An assignment at which p(a,b,z)p(z) != p(a,z)p(b,z), if any.
std::optional<NamedAssignment> ciWitness(const Kernel& p, const std::vector<std::string>& a,
                                         const std::vector<std::string>& b, const std::vector<std::string>& z);

// p(outcomes, index) = q(outcomes | index) m(index); the result is a table.
Kernel joint(const Kernel& q, const Kernel& inputMarginal);
Kernel uniformTable(const std::vector<Variable>& vars);
// Splits a table into q(rest | index); throws ZeroProbabilityEvent on a null index row.
Kernel split(const Kernel& table, const std::vector<std::string>& index);

// Post-selects a table over the lifted variables on every copy equalling its source,
// drops the copies and renormalizes.
Kernel project(const Kernel& lifted, const HyperDag& h);
// Row-wise form of project for a kernel whose index contains the copies.
Kernel projectKernel(const Kernel& lifted, const HyperDag& h);

// Convex combination; all kernels must share variables in the same order.
Kernel mix(const std::vector<std::pair<Rational, Kernel>>& parts);

// Probability that A xor B equals X and Y, averaged under the input distribution.
Rational chshScore(const Kernel& k, const Kernel& inputDist);

}  // namespace causalbox
