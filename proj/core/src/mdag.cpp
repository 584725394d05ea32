#include "causalbox/mdag.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "causalbox/errors.hpp"

namespace causalbox {

namespace {

bool contains(const std::vector<std::string>& sorted, const std::string& v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

bool subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::vector<std::string>> maximalFaces(std::vector<std::vector<std::string>> faces) {
  for (auto& f : faces) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].size() < 2) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < faces.size() && !dominated; ++j)
      dominated = j != i && faces[j].size() > faces[i].size() && subset(faces[i], faces[j]);
    if (!dominated) out.push_back(faces[i]);
  }
  return out;
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

MDag::MDag(std::vector<std::string> random, std::vector<std::string> fixed, std::vector<Edge> edges,
           std::vector<std::vector<std::string>> faces)
    : random_(std::move(random)), fixed_(std::move(fixed)), edges_(std::move(edges)) {
  std::sort(random_.begin(), random_.end());
  std::sort(fixed_.begin(), fixed_.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  faces_ = maximalFaces(std::move(faces));
}

bool MDag::isRandom(const std::string& v) const { return contains(random_, v); }
bool MDag::isFixed(const std::string& v) const { return contains(fixed_, v); }

std::vector<std::string> MDag::parents(const std::string& v) const {
  std::vector<std::string> out;
  for (const auto& [from, to] : edges_)
    if (to == v) out.push_back(from);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> MDag::children(const std::string& v) const {
  std::vector<std::string> out;
  for (const auto& [from, to] : edges_)
    if (from == v) out.push_back(to);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> MDag::parentsOf(const std::vector<std::string>& set) const {
  std::set<std::string> out;
  for (const auto& [from, to] : edges_)
    if (std::find(set.begin(), set.end(), to) != set.end() &&
        std::find(set.begin(), set.end(), from) == set.end())
      out.insert(from);
  return {out.begin(), out.end()};
}

std::vector<std::string> MDag::childless() const {
  std::vector<std::string> out;
  for (const auto& v : random_)
    if (children(v).empty()) out.push_back(v);
  return out;
}

std::vector<std::string> MDag::order() const {
  std::map<std::string, int> indegree;
  for (const auto& v : random_) indegree[v] = 0;
  for (const auto& v : fixed_) indegree[v] = 0;
  for (const auto& e : edges_) ++indegree[e.second];
  std::set<std::string> ready;
  for (const auto& [v, d] : indegree)
    if (d == 0) ready.insert(v);
  std::vector<std::string> out;
  while (!ready.empty()) {
    std::string v = *ready.begin();
    ready.erase(ready.begin());
    out.push_back(v);
    for (const auto& [from, to] : edges_)
      if (from == v && --indegree[to] == 0) ready.insert(to);
  }
  if (out.size() != indegree.size()) throw CycleError("cycle detected");
  return out;
}

MDag MDag::withoutRandom(const std::string& v) const {
  if (!isRandom(v)) throw UnknownVertex(v);
  if (!children(v).empty()) throw InvalidGraph("vertex '" + v + "' is not childless");
  std::vector<std::string> random;
  for (const auto& r : random_)
    if (r != v) random.push_back(r);
  std::vector<Edge> edges;
  for (const auto& e : edges_)
    if (e.second != v) edges.push_back(e);
  auto faces = faces_;
  for (auto& f : faces) f.erase(std::remove(f.begin(), f.end(), v), f.end());
  return MDag(std::move(random), fixed_, std::move(edges), std::move(faces));
}

std::string MDag::key() const {
  std::ostringstream os;
  os << joined(random_) << '|' << joined(fixed_) << '|';
  for (const auto& [from, to] : edges_) os << from << '>' << to << ';';
  os << '|';
  for (const auto& f : faces_) os << joined(f) << ';';
  return os.str();
}

std::string MDag::str() const {
  std::ostringstream os;
  os << "random: {" << joined(random_) << "}\n";
  os << "fixed: {" << joined(fixed_) << "}\n";
  os << "edges:";
  for (const auto& [from, to] : edges_) os << ' ' << from << "->" << to;
  os << "\nfaces:";
  for (const auto& f : faces_) os << " {" << joined(f) << '}';
  os << '\n';
  return os.str();
}

MDag toMdag(const CausalDag& dag, const std::vector<std::string>& fixed) {
  for (const auto& w : fixed) {
    if (!dag.isObserved(w)) throw InvalidGraph("fixed vertex '" + w + "' is latent");
    if (!dag.parents(w).empty()) throw FixedNotParentless(w);
  }
  std::vector<std::string> sortedFixed(fixed.begin(), fixed.end());
  std::sort(sortedFixed.begin(), sortedFixed.end());
  std::vector<std::string> random;
  for (const auto& v : dag.observed())
    if (!contains(sortedFixed, v)) random.push_back(v);
  std::vector<Edge> edges;
  for (const auto& [from, to] : dag.edges())
    if (dag.isObserved(from) && dag.isObserved(to)) edges.emplace_back(from, to);
  std::vector<std::vector<std::string>> faces;
  for (const auto& l : dag.latents()) {
    std::vector<std::string> face;
    for (const auto& c : dag.children(l))
      if (dag.isObserved(c)) face.push_back(c);
    faces.push_back(std::move(face));
  }
  return MDag(std::move(random), std::move(sortedFixed), std::move(edges), std::move(faces));
}

std::vector<District> districts(const MDag& m) {
  const auto& rv = m.random();
  std::vector<int> parent(rv.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto idx = [&](const std::string& v) {
    return static_cast<int>(std::lower_bound(rv.begin(), rv.end(), v) - rv.begin());
  };
  for (const auto& f : m.faces())
    for (std::size_t k = 1; k < f.size(); ++k) parent[find(idx(f[k]))] = find(idx(f[0]));
  std::map<int, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < rv.size(); ++i) groups[find(static_cast<int>(i))].push_back(rv[i]);
  std::vector<District> out;
  for (auto& [root, members] : groups) out.push_back({std::move(members)});
  std::sort(out.begin(), out.end(),
            [](const District& a, const District& b) { return a.members.front() < b.members.front(); });
  return out;
}

MDag subgraph(const MDag& m, const District& d) {
  auto ds = districts(m);
  std::vector<std::string> members = d.members;
  std::sort(members.begin(), members.end());
  if (std::find(ds.begin(), ds.end(), District{members}) == ds.end())
    throw NotADistrict("{" + joined(members) + "} is not a district");
  std::vector<std::string> fixed = m.parentsOf(members);
  std::vector<Edge> edges;
  for (const auto& e : m.edges())
    if (contains(members, e.second)) edges.push_back(e);
  std::vector<std::vector<std::string>> faces;
  for (const auto& f : m.faces())
    if (contains(members, f.front())) faces.push_back(f);
  return MDag(std::move(members), std::move(fixed), std::move(edges), std::move(faces));
}

}  // namespace causalbox
