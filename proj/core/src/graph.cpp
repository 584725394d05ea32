#include "causalbox/graph.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "causalbox/errors.hpp"

namespace causalbox {

CausalDag& CausalDag::addObserved(const std::string& name, int cardinality) {
  if (index_.count(name)) {
    problems_.push_back("duplicate vertex name '" + name + "'");
    return *this;
  }
  if (cardinality < 1) problems_.push_back("observed vertex '" + name + "' has nonpositive cardinality");
  index_[name] = static_cast<int>(vertices_.size());
  vertices_.push_back({name, VertexKind::Observed, cardinality});
  parents_.emplace_back();
  children_.emplace_back();
  return *this;
}

CausalDag& CausalDag::addLatent(const std::string& name) {
  if (index_.count(name)) {
    problems_.push_back("duplicate vertex name '" + name + "'");
    return *this;
  }
  index_[name] = static_cast<int>(vertices_.size());
  vertices_.push_back({name, VertexKind::Latent, 0});
  parents_.emplace_back();
  children_.emplace_back();
  return *this;
}

CausalDag& CausalDag::addEdge(const std::string& from, const std::string& to) {
  auto f = index_.find(from);
  auto t = index_.find(to);
  if (f == index_.end() || t == index_.end()) {
    problems_.push_back("edge " + from + "->" + to + " references an unknown vertex");
    return *this;
  }
  const int u = f->second;
  const int v = t->second;
  if (std::find(children_[u].begin(), children_[u].end(), v) != children_[u].end()) {
    problems_.push_back("duplicate edge " + from + "->" + to);
    return *this;
  }
  edges_.emplace_back(u, v);
  children_[u].push_back(v);
  parents_[v].push_back(u);
  return *this;
}

std::vector<Edge> CausalDag::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (auto [u, v] : edges_) out.emplace_back(vertices_[u].name, vertices_[v].name);
  return out;
}

int CausalDag::indexOf(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownVertex(name);
  return it->second;
}

bool CausalDag::isObserved(const std::string& name) const {
  return vertex(name).kind == VertexKind::Observed;
}

namespace {

std::vector<std::string> sortedNames(const CausalDag& dag, const std::vector<int>& ids) {
  std::vector<std::string> out;
  for (int i : ids) out.push_back(dag.vertices()[i].name);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::string> CausalDag::parents(const std::string& name) const {
  return sortedNames(*this, parents_[indexOf(name)]);
}

std::vector<std::string> CausalDag::children(const std::string& name) const {
  return sortedNames(*this, children_[indexOf(name)]);
}

std::vector<std::string> CausalDag::observed() const {
  std::vector<std::string> out;
  for (const auto& v : vertices_)
    if (v.kind == VertexKind::Observed) out.push_back(v.name);
  return out;
}

std::vector<std::string> CausalDag::latents() const {
  std::vector<std::string> out;
  for (const auto& v : vertices_)
    if (v.kind == VertexKind::Latent) out.push_back(v.name);
  return out;
}

namespace {

// Returns the order, or nullopt when a cycle prevents completion.
std::optional<std::vector<std::string>> kahn(const CausalDag& dag) {
  const auto& vs = dag.vertices();
  std::vector<int> indegree(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) indegree[i] = static_cast<int>(dag.parentIndex()[i].size());
  std::set<std::pair<std::string, int>> ready;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (indegree[i] == 0) ready.emplace(vs[i].name, static_cast<int>(i));
  std::vector<std::string> order;
  while (!ready.empty()) {
    auto [name, i] = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(name);
    for (int c : dag.childIndex()[i])
      if (--indegree[c] == 0) ready.emplace(vs[c].name, c);
  }
  if (order.size() != vs.size()) return std::nullopt;
  return order;
}

}  // namespace

ValidationReport validate(const CausalDag& dag) {
  ValidationReport report;
  report.violations = dag.problems();
  if (!kahn(dag)) report.violations.push_back("cycle detected");
  for (std::size_t i = 0; i < dag.vertices().size(); ++i) {
    const auto& v = dag.vertices()[i];
    if (v.kind != VertexKind::Latent) continue;
    if (!dag.parentIndex()[i].empty())
      report.violations.push_back("latent vertex has incoming edge: " + v.name);
    if (dag.childIndex()[i].empty())
      report.violations.push_back("latent vertex has no outgoing edge: " + v.name);
  }
  return report;
}

std::vector<std::string> topologicalOrder(const CausalDag& dag) {
  auto order = kahn(dag);
  if (!order) throw CycleError("cycle detected");
  return *order;
}

std::vector<std::vector<std::string>> allTopologicalOrders(const CausalDag& dag) {
  topologicalOrder(dag);
  std::vector<std::string> obs = dag.observed();
  std::sort(obs.begin(), obs.end());
  const int n = static_cast<int>(obs.size());
  std::vector<std::vector<int>> pa(n);
  for (int i = 0; i < n; ++i)
    for (const auto& p : dag.parents(obs[i])) {
      auto it = std::lower_bound(obs.begin(), obs.end(), p);
      if (it != obs.end() && *it == p) pa[i].push_back(static_cast<int>(it - obs.begin()));
    }
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> current;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(current.size()) == n) {
      out.push_back(current);
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      bool ready = std::all_of(pa[i].begin(), pa[i].end(), [&](int p) { return used[p]; });
      if (!ready) continue;
      used[i] = true;
      current.push_back(obs[i]);
      rec();
      current.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

namespace {

std::vector<bool> closure(const CausalDag& dag, const std::vector<std::string>& of,
                          const std::vector<std::vector<int>>& step) {
  std::vector<bool> seen(dag.vertices().size(), false);
  std::vector<int> stack;
  for (const auto& name : of) {
    int i = dag.indexOf(name);
    if (!seen[i]) {
      seen[i] = true;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j : step[i])
      if (!seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return seen;
}

std::vector<std::string> namesOf(const CausalDag& dag, const std::vector<bool>& mask) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(dag.vertices()[i].name);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::string> ancestors(const CausalDag& dag, const std::vector<std::string>& of) {
  return namesOf(dag, closure(dag, of, dag.parentIndex()));
}

std::vector<std::string> descendants(const CausalDag& dag, const std::vector<std::string>& of) {
  return namesOf(dag, closure(dag, of, dag.childIndex()));
}

bool dSeparated(const CausalDag& dag, const std::vector<std::string>& a, const std::vector<std::string>& b,
                const std::vector<std::string>& z) {
  const std::size_t n = dag.vertices().size();
  std::vector<int> role(n, 0);  // bit 1: a, bit 2: b, bit 4: z
  auto mark = [&](const std::vector<std::string>& set, int bit) {
    for (const auto& name : set) {
      int i = dag.indexOf(name);
      if (role[i] & ~bit) throw OverlappingSets("vertex '" + name + "' appears in more than one set");
      role[i] |= bit;
    }
  };
  mark(a, 1);
  mark(b, 2);
  mark(z, 4);

  // Bayes-ball: states are (vertex, arrivedFromChild).
  const std::vector<bool> opensCollider = closure(dag, z, dag.parentIndex());
  std::vector<std::array<bool, 2>> visited(n, {false, false});
  std::vector<std::pair<int, bool>> stack;
  for (const auto& name : a) stack.emplace_back(dag.indexOf(name), true);
  while (!stack.empty()) {
    auto [v, up] = stack.back();
    stack.pop_back();
    if (visited[v][up]) continue;
    visited[v][up] = true;
    const bool inZ = role[v] & 4;
    if (!inZ && (role[v] & 2)) return false;
    if (up) {
      if (inZ) continue;
      for (int p : dag.parentIndex()[v]) stack.emplace_back(p, true);
      for (int c : dag.childIndex()[v]) stack.emplace_back(c, false);
    } else {
      if (!inZ)
        for (int c : dag.childIndex()[v]) stack.emplace_back(c, false);
      if (opensCollider[v])
        for (int p : dag.parentIndex()[v]) stack.emplace_back(p, true);
    }
  }
  return true;
}

std::string CiStatement::str() const {
  std::ostringstream os;
  os << a << " ⟂ " << b;
  if (!z.empty()) {
    os << " | ";
    for (std::size_t i = 0; i < z.size(); ++i) os << (i ? "," : "") << z[i];
  }
  return os.str();
}

std::vector<CiStatement> ciConstraints(const CausalDag& dag) {
  // Pairs follow the topological order, so statements read cause-first (X before B).
  std::vector<std::string> obs;
  for (const auto& v : topologicalOrder(dag))
    if (dag.isObserved(v)) obs.push_back(v);
  std::vector<CiStatement> out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = i + 1; j < obs.size(); ++j) {
      std::vector<std::string> rest;
      for (std::size_t k = 0; k < obs.size(); ++k)
        if (k != i && k != j) rest.push_back(obs[k]);
      std::sort(rest.begin(), rest.end());
      std::vector<std::vector<std::string>> subsets;
      for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
        std::vector<std::string> z;
        for (std::size_t k = 0; k < rest.size(); ++k)
          if (mask & (1u << k)) z.push_back(rest[k]);
        subsets.push_back(std::move(z));
      }
      std::stable_sort(subsets.begin(), subsets.end(), [](const auto& l, const auto& r) {
        return l.size() != r.size() ? l.size() < r.size() : l < r;
      });
      for (auto& z : subsets)
        if (dSeparated(dag, {obs[i]}, {obs[j]}, z)) out.push_back({obs[i], obs[j], std::move(z)});
    }
  }
  return out;
}

}  // namespace causalbox
