#include "causalbox/polytope.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "causalbox/fixtures.hpp"
#include "causalbox/linear_program.hpp"

namespace causalbox {

namespace {

struct Party {
  std::vector<Variable> parents;
  std::vector<int> parentPos;  // positions in the scenario input list
  int cardinality;
  std::size_t domain;
  std::size_t responses;
};

std::vector<Party> parties(const BellScenario& s) {
  std::vector<Party> out;
  for (std::size_t i = 0; i < s.outputs.size(); ++i) {
    Party p;
    for (const auto& name : s.inputParents[i]) {
      for (std::size_t k = 0; k < s.inputs.size(); ++k)
        if (s.inputs[k].name == name) {
          p.parents.push_back(s.inputs[k]);
          p.parentPos.push_back(static_cast<int>(k));
        }
    }
    p.cardinality = s.outputs[i].cardinality;
    p.domain = assignmentCount(p.parents);
    p.responses = 1;
    for (std::size_t d = 0; d < p.domain; ++d) p.responses *= static_cast<std::size_t>(p.cardinality);
    out.push_back(std::move(p));
  }
  return out;
}

Vertex vertexAt(const BellScenario& s, const std::vector<Party>& ps, std::size_t code) {
  Vertex v;
  std::vector<std::vector<int>> responses(ps.size());
  for (std::size_t i = ps.size(); i-- > 0;) {
    std::size_t r = code % ps[i].responses;
    code /= ps[i].responses;
    std::vector<int> table(ps[i].domain);
    for (std::size_t d = ps[i].domain; d-- > 0;) {
      table[d] = static_cast<int>(r % ps[i].cardinality);
      r /= ps[i].cardinality;
    }
    responses[i] = table;
    v.strategy[s.outputs[i].name] = std::move(table);
  }
  const std::size_t rows = assignmentCount(s.inputs);
  const std::size_t cols = assignmentCount(s.outputs);
  std::vector<Rational> values(rows * cols);
  Assignment out(ps.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const Assignment in = decode(s.inputs, r);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      Assignment local;
      for (int pos : ps[i].parentPos) local.push_back(in[pos]);
      out[i] = responses[i][encode(ps[i].parents, local)];
    }
    values[r * cols + encode(s.outputs, out)] = Rational(1);
  }
  v.table = Kernel::trusted(s.outputs, s.inputs, std::move(values));
  return v;
}

std::string serialize(const Kernel& k) {
  std::string out;
  for (const auto& v : k.values()) {
    out += v.str();
    out += ';';
  }
  return out;
}

}  // namespace

std::size_t hVertexCount(const BellScenario& s) {
  std::size_t n = 1;
  for (const auto& p : parties(s)) n *= p.responses;
  return n;
}

std::vector<Vertex> enumerateHVertices(const HyperDag& h, int jobs) {
  const BellScenario s = bellScenario(h.base);
  const auto ps = parties(s);
  const std::size_t n = hVertexCount(s);
  std::vector<Vertex> out(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = vertexAt(s, ps, i);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = vertexAt(s, ps, i);
    });
  for (auto& t : pool) t.join();
  return out;
}

std::vector<Vertex> enumerateClassicalVertices(const CausalDag& g, int jobs, const CopyNames& names) {
  const HyperDag h = buildHypergraph(g, names);
  std::vector<Vertex> out;
  std::set<std::string> seen;
  for (auto& v : enumerateHVertices(h, jobs)) {
    v.table = projectKernel(v.table, h);
    if (seen.insert(serialize(v.table)).second) out.push_back(std::move(v));
  }
  return out;
}

ClassicalVerdict classicalMember(const Kernel& p, const std::vector<Vertex>& vertices) {
  ClassicalVerdict verdict;
  verdict.vertices = vertices;
  if (vertices.empty()) return verdict;
  const Kernel& layout = vertices.front().table;
  Kernel target;
  try {
    target = reorder(p, layout.outcomeNames(), layout.indexNames());
  } catch (const Error&) {
    throw InvalidKernel("distribution variables do not match the graph's vertex tables");
  }
  if (target.outcomes() != layout.outcomes() || target.index() != layout.index())
    throw CardinalityMismatch("distribution cardinalities do not match the graph");

  LinearSystem lp;
  for (std::size_t i = 0; i < vertices.size(); ++i) lp.addVariable("w" + std::to_string(i));
  LinearForm sum;
  for (std::size_t i = 0; i < vertices.size(); ++i) sum[static_cast<int>(i)] = Rational(1);
  lp.addEquality(std::move(sum), Rational(1));
  for (std::size_t e = 0; e < target.values().size(); ++e) {
    LinearForm f;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (!vertices[i].table.values()[e].isZero()) f[static_cast<int>(i)] = vertices[i].table.values()[e];
    lp.addEquality(std::move(f), target.values()[e]);
  }
  const LpResult res = lpSolve(lp);
  if (res.status != LpResult::Status::Optimal) return verdict;
  verdict.member = true;
  verdict.weights = res.assignment;
  return verdict;
}

ClassicalVerdict classicalMember(const Kernel& p, const CausalDag& g, const CopyNames& names) {
  return classicalMember(p, enumerateClassicalVertices(g, 1, names));
}

Rational Functional::apply(const Kernel& k) const {
  std::vector<std::string> outs, idx;
  for (const auto& v : outcomes) outs.push_back(v.name);
  for (const auto& v : index) idx.push_back(v.name);
  const Kernel aligned = reorder(k, outs, idx);
  if (aligned.outcomes() != outcomes || aligned.index() != index)
    throw CardinalityMismatch("functional and kernel disagree on cardinalities");
  Rational s;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (!coefficients[i].isZero()) s += coefficients[i] * aligned.values()[i];
  return s;
}

Functional chshFunctional() {
  Functional f{{{"A", 2}, {"B", 2}}, {{"X", 2}, {"Y", 2}}, std::vector<Rational>(16)};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) f.coefficients[(x * 2 + y) * 4 + a * 2 + b] = Rational(1, 4);
  return f;
}

Functional gyniFunctional() {
  Functional f{{{"A", 2}, {"B", 2}, {"C", 2}}, {{"X", 2}, {"Y", 2}, {"Z", 2}}, std::vector<Rational>(64)};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        const int row = (x * 2 + y) * 2 + z;
        f.coefficients[row * 8 + (y * 2 + z) * 2 + x] = Rational(1, 8);
      }
  return f;
}

Maximum maximizeFunctional(const Functional& f, const std::vector<Kernel>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("no vertices to maximize over");
  Maximum best{f.apply(vertices.front()), 0};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    Rational v = f.apply(vertices[i]);
    if (v > best.value) best = {std::move(v), i};
  }
  return best;
}

Maximum maximizeFunctional(const Functional& f, const std::vector<Vertex>& vertices) {
  std::vector<Kernel> tables;
  for (const auto& v : vertices) tables.push_back(v.table);
  return maximizeFunctional(f, tables);
}

Rational lpMaximize(const Functional& f, const std::vector<Kernel>& vertices) {
  LinearSystem lp;
  LinearForm sum, objective;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int id = lp.addVariable("w" + std::to_string(i));
    sum[id] = Rational(1);
    objective[id] = f.apply(vertices[i]);
  }
  lp.addEquality(std::move(sum), Rational(1));
  lp.setObjective(std::move(objective));
  const LpResult res = lpSolve(lp);
  if (res.status != LpResult::Status::Optimal) throw std::logic_error("vertex LP must be bounded and feasible");
  return res.value;
}

std::vector<Kernel> nsVertices() {
  std::vector<Kernel> out;
  for (int i = 0; i < 16; ++i) out.push_back(fixtures::localBox(i));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) out.push_back(fixtures::prBox(a, b, c));
  return out;
}

Kernel NsDecomposition::reconstruct() const {
  std::vector<std::pair<Rational, Kernel>> parts;
  for (int i = 0; i < 16; ++i)
    if (!localWeights[i].isZero()) parts.emplace_back(localWeights[i], fixtures::localBox(i));
  if (pr && !prWeight.isZero()) parts.emplace_back(prWeight, fixtures::prBox((*pr)[0], (*pr)[1], (*pr)[2]));
  return mix(parts);
}

namespace {

std::optional<std::vector<Rational>> convexWeights(const Kernel& target, const std::vector<Kernel>& parts) {
  LinearSystem lp;
  LinearForm sum;
  for (std::size_t i = 0; i < parts.size(); ++i) sum[lp.addVariable("w" + std::to_string(i))] = Rational(1);
  lp.addEquality(std::move(sum), Rational(1));
  for (std::size_t e = 0; e < target.values().size(); ++e) {
    LinearForm f;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (!parts[i].values()[e].isZero()) f[static_cast<int>(i)] = parts[i].values()[e];
    lp.addEquality(std::move(f), target.values()[e]);
  }
  const LpResult res = lpSolve(lp);
  if (res.status != LpResult::Status::Optimal) return std::nullopt;
  return res.assignment;
}

}  // namespace

NsDecomposition decomposeNsBox(const Kernel& q) {
  if (q.outcomes().size() != 2 || q.index().size() != 2)
    throw CardinalityMismatch("decomposition needs a bipartite box p(a,b|x,y)");
  for (const auto& v : q.allVariables())
    if (v.cardinality != 2) throw CardinalityMismatch("decomposition needs binary inputs and outputs");
  // Positional reading: first outcome is A, first index is X.
  const Kernel box = Kernel::trusted({{"A", 2}, {"B", 2}}, {{"X", 2}, {"Y", 2}}, q.values());
  if (!nsMember(box, bellScenario(fixtures::chshGraph()))) throw NotNoSignalling("box signals between the parties");

  std::vector<Kernel> locals;
  for (int i = 0; i < 16; ++i) locals.push_back(fixtures::localBox(i));
  NsDecomposition d;
  if (auto w = convexWeights(box, locals)) {
    d.localWeights = *w;
    return d;
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        auto parts = locals;
        parts.push_back(fixtures::prBox(a, b, c));
        if (auto w = convexWeights(box, parts)) {
          d.localWeights.assign(w->begin(), w->begin() + 16);
          d.pr = std::array<int, 3>{a, b, c};
          d.prWeight = (*w)[16];
          return d;
        }
      }
  throw DecompositionNotFound("no PR box completes the decomposition");
}

}  // namespace causalbox
