#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace causalbox {

enum class VertexKind { Observed, Latent };

struct GraphVertex {
  std::string name;
  VertexKind kind = VertexKind::Observed;
  int cardinality = 2;  // 0 for latent vertices
};

using Edge = std::pair<std::string, std::string>;

// A DAG whose latent vertices are roots. Construction never throws on bad input;
// problems are collected and reported by validate().
class CausalDag {
 public:
  CausalDag& addObserved(const std::string& name, int cardinality = 2);
  CausalDag& addLatent(const std::string& name);
  CausalDag& addEdge(const std::string& from, const std::string& to);

  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  // Resolved edges in insertion order.
  std::vector<Edge> edges() const;

  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  int indexOf(const std::string& name) const;  // throws UnknownVertex
  const GraphVertex& vertex(const std::string& name) const { return vertices_[indexOf(name)]; }
  bool isObserved(const std::string& name) const;
  int cardinality(const std::string& name) const { return vertex(name).cardinality; }

  // Sorted by name.
  std::vector<std::string> parents(const std::string& name) const;
  std::vector<std::string> children(const std::string& name) const;
  // In declaration order.
  std::vector<std::string> observed() const;
  std::vector<std::string> latents() const;

  const std::vector<std::vector<int>>& parentIndex() const { return parents_; }
  const std::vector<std::vector<int>>& childIndex() const { return children_; }

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<GraphVertex> vertices_;
  std::map<std::string, int> index_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
  std::vector<std::string> problems_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const CausalDag& dag);

// Kahn's algorithm, always emitting the lexicographically smallest ready vertex.
std::vector<std::string> topologicalOrder(const CausalDag& dag);

// Every topological order of the observed vertices; intended for small graphs.
std::vector<std::vector<std::string>> allTopologicalOrders(const CausalDag& dag);

std::vector<std::string> ancestors(const CausalDag& dag, const std::vector<std::string>& of);
std::vector<std::string> descendants(const CausalDag& dag, const std::vector<std::string>& of);

bool dSeparated(const CausalDag& dag, const std::vector<std::string>& a, const std::vector<std::string>& b,
                const std::vector<std::string>& z);

struct CiStatement {
  std::string a;
  std::string b;
  std::vector<std::string> z;  // sorted

  std::string str() const;
  friend bool operator==(const CiStatement&, const CiStatement&) = default;
  friend auto operator<=>(const CiStatement&, const CiStatement&) = default;
};

// Singleton-pair statements over observed vertices, a before b in topological order, for every
// conditioning set (by size, then by name).
std::vector<CiStatement> ciConstraints(const CausalDag& dag);

}  // namespace causalbox
