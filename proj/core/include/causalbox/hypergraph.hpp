#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "causalbox/graph.hpp"

namespace causalbox {

struct CopyVertex {
  std::string name;
  std::string source;
  std::string child;
  friend bool operator==(const CopyVertex&, const CopyVertex&) = default;
};

struct HyperDag {
  CausalDag base;
  std::vector<CopyVertex> copies;

  const CopyVertex* copyNamed(const std::string& name) const;
};

// Preferred names for copies, keyed by (source, child).
using CopyNames = std::map<std::pair<std::string, std::string>, std::string>;

// Every observed vertex that has a parent and observed children loses its outgoing
// observed edges; each former child gets a fresh root copy of the vertex instead.
// Unnamed copies are called u_<source>_<child>.
HyperDag buildHypergraph(const CausalDag& dag, const CopyNames& names = {});

// True when no observed vertex has both a parent and an observed child.
bool isBellType(const CausalDag& dag);

}  // namespace causalbox
