#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalbox/constraint.hpp"
#include "causalbox/graph.hpp"
#include "causalbox/kernel.hpp"
#include "causalbox/mdag.hpp"

namespace causalbox {

// The product over v in d of p(v | predecessors of v within d and its parents), following
// `order` (a topological order of the observed vertices; empty means topologicalOrder(dag)).
Recipe districtRecipe(const CausalDag& dag, const District& d, const std::vector<std::string>& order = {});

// Numeric form of districtRecipe: a kernel over d indexed by pa(d)\d.
// Throws ZeroDivision when a conditional it needs is undefined.
Kernel districtKernel(const Kernel& p, const CausalDag& dag, const District& d,
                      const std::vector<std::string>& order = {});

// CI statements followed by Verma records, deduplicated.
std::vector<ConstraintRecord> enumerateConstraints(const CausalDag& dag);

// Values of a recipe over its free variables, with undefined entries where a conditional
// divides by zero (zero times undefined counts as zero).
struct PartialTable {
  std::vector<Variable> vars;  // sorted by name
  std::vector<Rational> values;
  std::vector<char> defined;

  std::optional<Rational> at(const NamedAssignment& a) const;
};

PartialTable evaluate(const Recipe& recipe, const Kernel& p);

struct Violation {
  ConstraintRecord record;
  NamedAssignment witness;
  std::string detail;
};

struct NestedVerdict {
  bool member = true;
  std::vector<Violation> violations;
  // Records that could not be fully evaluated because a conditional was undefined; they count as satisfied.
  std::vector<ConstraintRecord> indeterminate;
};

// Evaluates one record on a table over the observed vertices.
std::optional<Violation> checkRecord(const ConstraintRecord& record, const Kernel& p, bool* indeterminate = nullptr);

NestedVerdict checkNested(const Kernel& p, const CausalDag& dag);
NestedVerdict checkIndependences(const Kernel& p, const CausalDag& dag);

}  // namespace causalbox
