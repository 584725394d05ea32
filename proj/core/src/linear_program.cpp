#include "causalbox/linear_program.hpp"

#include <stdexcept>

namespace causalbox {

int LinearSystem::addVariable(const std::string& name) {
  if (ids_.count(name)) throw std::invalid_argument("duplicate LP variable '" + name + "'");
  const int id = static_cast<int>(names_.size());
  ids_[name] = id;
  names_.push_back(name);
  return id;
}

std::optional<int> LinearSystem::find(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void LinearSystem::addEquality(LinearForm coefficients, Rational rhs) {
  for (auto it = coefficients.begin(); it != coefficients.end();) {
    if (it->first < 0 || it->first >= static_cast<int>(names_.size()))
      throw std::invalid_argument("LP row references an undeclared variable");
    it = it->second.isZero() ? coefficients.erase(it) : std::next(it);
  }
  rows_.push_back({std::move(coefficients), std::move(rhs)});
}

void LinearSystem::addLessEqual(LinearForm coefficients, Rational rhs) {
  const int slack = addVariable("slack#" + std::to_string(rows_.size()) + "#" + std::to_string(names_.size()));
  coefficients[slack] = Rational(1);
  addEquality(std::move(coefficients), std::move(rhs));
}

namespace {

// Dense tableau; column `cols` holds the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_(rows * (cols + 1)), basis_(rows) {}

  mpq_class& at(std::size_t r, std::size_t c) { return a_[r * (n_ + 1) + c]; }
  mpq_class& rhs(std::size_t r) { return at(r, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc, std::vector<mpq_class>& objective) {
    mpq_class inv = 1 / at(pr, pc);
    nonzero_.clear();
    for (std::size_t c = 0; c <= n_; ++c) {
      mpq_class& v = at(pr, c);
      if (sgn(v) != 0) {
        v *= inv;
        nonzero_.push_back(c);
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr) continue;
      mpq_class f = at(r, pc);
      if (sgn(f) == 0) continue;
      for (std::size_t c : nonzero_) at(r, c) -= f * at(pr, c);
    }
    mpq_class f = objective[pc];
    if (sgn(f) != 0)
      for (std::size_t c : nonzero_) objective[c] -= f * at(pr, c);
    basis_[pr] = pc;
  }

  void removeRow(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * (n_ + 1)),
             a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (n_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  // Keeps the first `keep` columns and the right-hand side.
  void truncateColumns(std::size_t keep) {
    std::vector<mpq_class> b(m_ * (keep + 1));
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t c = 0; c < keep; ++c) b[r * (keep + 1) + c] = std::move(at(r, c));
      b[r * (keep + 1) + keep] = std::move(rhs(r));
    }
    a_ = std::move(b);
    n_ = keep;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<mpq_class> a_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
};

enum class Outcome { Optimal, Unbounded };

// Maximizes with reduced costs in `objective` (entry c is the reduced cost of column c, the last
// entry is minus the current value). Bland's rule: lowest improving column, lowest basic index on ties.
Outcome simplex(Tableau& t, std::vector<mpq_class>& objective, std::size_t allowed, int& pivots) {
  for (;;) {
    std::size_t enter = allowed;
    for (std::size_t c = 0; c < allowed; ++c)
      if (sgn(objective[c]) > 0) {
        enter = c;
        break;
      }
    if (enter == allowed) return Outcome::Optimal;
    std::size_t leave = t.rows();
    mpq_class best;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const mpq_class& v = t.at(r, enter);
      if (sgn(v) <= 0) continue;
      mpq_class ratio = t.rhs(r) / v;
      if (leave == t.rows() || ratio < best || (ratio == best && t.basis()[r] < t.basis()[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == t.rows()) return Outcome::Unbounded;
    t.pivot(leave, enter, objective);
    ++pivots;
  }
}

}  // namespace

LpResult lpSolve(const LinearSystem& sys) {
  const std::size_t n = sys.variableCount();
  const std::size_t m = sys.rows().size();
  LpResult result;
  Tableau t(m, n + m);
  std::vector<mpq_class> objective(n + m + 1);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = sys.rows()[r];
    const bool flip = row.rhs.sign() < 0;
    for (const auto& [id, coef] : row.coefficients) t.at(r, id) = flip ? mpq_class(-coef.mpq()) : coef.mpq();
    t.rhs(r) = flip ? mpq_class(-row.rhs.mpq()) : row.rhs.mpq();
    t.at(r, n + r) = 1;
    t.basis()[r] = n + r;
    // Phase one maximizes minus the artificial sum; price out the basic artificials.
    for (std::size_t c = 0; c < n; ++c) objective[c] += t.at(r, c);
    objective[n + m] += t.rhs(r);
  }
  simplex(t, objective, n + m, result.pivots);
  if (sgn(objective[n + m]) != 0) {
    result.status = LpResult::Status::Infeasible;
    return result;
  }
  // Artificials still basic sit at zero: pivot them out, or drop their redundant row.
  for (std::size_t r = t.rows(); r-- > 0;) {
    if (t.basis()[r] < n) continue;
    std::size_t col = n;
    for (std::size_t c = 0; c < n && col == n; ++c)
      if (sgn(t.at(r, c)) != 0) col = c;
    if (col == n) {
      t.removeRow(r);
    } else {
      t.pivot(r, col, objective);
      ++result.pivots;
    }
  }
  t.truncateColumns(n);

  std::vector<mpq_class> cost(n + 1);
  if (sys.objective()) {
    for (const auto& [id, coef] : *sys.objective()) cost[id] = coef.mpq();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const mpq_class f = cost[t.basis()[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (sgn(t.at(r, c)) != 0) cost[c] -= f * t.at(r, c);
      cost[n] -= f * t.rhs(r);
    }
    // Reduced costs of basic columns are zero by construction.
    if (simplex(t, cost, n, result.pivots) == Outcome::Unbounded) {
      result.status = LpResult::Status::Unbounded;
      return result;
    }
  }
  result.status = LpResult::Status::Optimal;
  result.value = Rational(mpq_class(-cost[n]));
  result.assignment.assign(n, Rational());
  for (std::size_t r = 0; r < t.rows(); ++r) result.assignment[t.basis()[r]] = Rational(t.rhs(r));
  return result;
}

}  // namespace causalbox
