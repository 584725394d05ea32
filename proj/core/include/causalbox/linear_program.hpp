#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalbox/rational.hpp"

namespace causalbox {

using LinearForm = std::map<int, Rational>;  // variable id -> coefficient

// Equality-form linear program over nonnegative variables.
class LinearSystem {
 public:
  int addVariable(const std::string& name);
  std::optional<int> find(const std::string& name) const;

  void addEquality(LinearForm coefficients, Rational rhs);
  // Introduces a slack variable.
  void addLessEqual(LinearForm coefficients, Rational rhs);
  // Maximized by lpSolve; without one, lpSolve only decides feasibility.
  void setObjective(LinearForm coefficients) { objective_ = std::move(coefficients); }

  std::size_t variableCount() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  struct Row {
    LinearForm coefficients;
    Rational rhs;
  };
  const std::vector<Row>& rows() const { return rows_; }
  const std::optional<LinearForm>& objective() const { return objective_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> ids_;
  std::vector<Row> rows_;
  std::optional<LinearForm> objective_;
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> assignment;  // by variable id
  int pivots = 0;
};

// Two-phase simplex in exact arithmetic with Bland's rule.
LpResult lpSolve(const LinearSystem& sys);

}  // namespace causalbox
