#pragma once

#include <string>
#include <vector>

#include "causalbox/graph.hpp"

namespace causalbox {

// Directed edges over random and fixed vertices plus bidirected faces over the random ones.
// Faces are stored as the maximal faces of size two or more; singletons are implied.
class MDag {
 public:
  MDag(std::vector<std::string> random, std::vector<std::string> fixed, std::vector<Edge> edges,
       std::vector<std::vector<std::string>> faces);

  const std::vector<std::string>& random() const { return random_; }
  const std::vector<std::string>& fixed() const { return fixed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<std::string>>& faces() const { return faces_; }

  bool isRandom(const std::string& v) const;
  bool isFixed(const std::string& v) const;
  std::vector<std::string> parents(const std::string& v) const;
  std::vector<std::string> children(const std::string& v) const;
  // Parents of any member of `set` that are not themselves in `set`.
  std::vector<std::string> parentsOf(const std::vector<std::string>& set) const;
  std::vector<std::string> childless() const;

  // Lexicographic Kahn order over random and fixed vertices.
  std::vector<std::string> order() const;

  // Marginalizes a childless random vertex; fixed vertices are kept.
  MDag withoutRandom(const std::string& v) const;

  std::string key() const;
  std::string str() const;

 private:
  std::vector<std::string> random_;
  std::vector<std::string> fixed_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::string>> faces_;
};

MDag toMdag(const CausalDag& dag, const std::vector<std::string>& fixed = {});

struct District {
  std::vector<std::string> members;  // sorted
  friend bool operator==(const District&, const District&) = default;
};

// Ordered by smallest member.
std::vector<District> districts(const MDag& m);

MDag subgraph(const MDag& m, const District& d);

}  // namespace causalbox
