#include "causalbox/hypergraph.hpp"

#include <set>

namespace causalbox {

const CopyVertex* HyperDag::copyNamed(const std::string& name) const {
  for (const auto& c : copies)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

bool lifts(const CausalDag& dag, const std::string& v) {
  if (!dag.isObserved(v) || dag.parents(v).empty()) return false;
  for (const auto& c : dag.children(v))
    if (dag.isObserved(c)) return true;
  return false;
}

}  // namespace

bool isBellType(const CausalDag& dag) {
  for (const auto& v : dag.observed())
    if (lifts(dag, v)) return false;
  return true;
}

HyperDag buildHypergraph(const CausalDag& dag, const CopyNames& names) {
  std::set<std::string> lifted;
  for (const auto& v : dag.observed())
    if (lifts(dag, v)) lifted.insert(v);

  std::set<std::string> taken;
  for (const auto& v : dag.vertices()) taken.insert(v.name);

  std::vector<CopyVertex> copies;
  for (const auto& v : dag.observed()) {
    if (!lifted.count(v)) continue;
    for (const auto& c : dag.children(v)) {
      if (!dag.isObserved(c)) continue;
      auto it = names.find({v, c});
      std::string name = it != names.end() ? it->second : "u_" + v + "_" + c;
      if (taken.count(name)) {
        int suffix = 2;
        while (taken.count(name + "_" + std::to_string(suffix))) ++suffix;
        name += "_" + std::to_string(suffix);
      }
      taken.insert(name);
      copies.push_back({name, v, c});
    }
  }

  HyperDag h;
  for (const auto& v : dag.vertices()) {
    if (v.kind == VertexKind::Latent)
      h.base.addLatent(v.name);
    else
      h.base.addObserved(v.name, v.cardinality);
  }
  for (const auto& c : copies) h.base.addObserved(c.name, dag.cardinality(c.source));
  for (const auto& [from, to] : dag.edges()) {
    if (lifted.count(from) && dag.isObserved(to)) continue;
    h.base.addEdge(from, to);
  }
  for (const auto& c : copies) h.base.addEdge(c.name, c.child);
  h.copies = std::move(copies);
  return h;
}

}  // namespace causalbox
