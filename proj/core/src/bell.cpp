#include "causalbox/bell.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace causalbox {

std::vector<std::string> BellScenario::inputNames() const {
  std::vector<std::string> out;
  for (const auto& v : inputs) out.push_back(v.name);
  return out;
}

std::vector<std::string> BellScenario::outputNames() const {
  std::vector<std::string> out;
  for (const auto& v : outputs) out.push_back(v.name);
  return out;
}

BellScenario bellScenario(const CausalDag& dag) {
  const auto latents = dag.latents();
  if (latents.size() > 1) throw MultiLatent("graph has " + std::to_string(latents.size()) + " latent vertices");
  if (!isBellType(dag)) throw UnsupportedGraph("graph is not Bell-type; build its hypergraph first");
  BellScenario s;
  s.sharedLatent = !latents.empty();
  for (const auto& v : dag.observed()) {
    const auto pa = dag.parents(v);
    if (pa.empty()) {
      s.inputs.push_back({v, dag.cardinality(v)});
      continue;
    }
    s.outputs.push_back({v, dag.cardinality(v)});
    std::vector<std::string> inputs;
    for (const auto& p : pa)
      if (dag.isObserved(p)) inputs.push_back(p);
    s.inputParents.push_back(std::move(inputs));
  }
  if (s.outputs.size() >= 2) {
    for (std::size_t i = 0; i < s.outputs.size(); ++i) {
      const auto pa = dag.parents(s.outputs[i].name);
      const bool latent = std::any_of(pa.begin(), pa.end(), [&](const auto& p) { return !dag.isObserved(p); });
      if (!latent)
        throw UnsupportedGraph("output '" + s.outputs[i].name +
                               "' has no latent parent, so its independence from the other outputs is not linear");
    }
  }
  return s;
}

std::string NsEquality::str(const BellScenario& s) const {
  std::ostringstream os;
  os << "p(";
  for (std::size_t i = 0; i < outputs.size(); ++i)
    os << (i ? "," : "") << s.outputs[outputs[i]].name << "=" << outcome[i];
  auto row = [&](std::size_t r) {
    const Assignment a = decode(s.inputs, r);
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + s.inputs[i].name + "=" + std::to_string(a[i]);
    return out;
  };
  os << " | " << row(this->row) << ") = p(same | " << row(baseRow) << ")";
  return os.str();
}

std::vector<NsEquality> nsConstraints(const BellScenario& s) {
  std::vector<NsEquality> out;
  const std::size_t k = s.outputs.size();
  const std::size_t rows = assignmentCount(s.inputs);
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> members;
    std::set<std::string> parents;
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        members.push_back(static_cast<int>(i));
        vars.push_back(s.outputs[i]);
        parents.insert(s.inputParents[i].begin(), s.inputParents[i].end());
      }
    std::vector<std::size_t> free;
    for (std::size_t u = 0; u < s.inputs.size(); ++u)
      if (!parents.count(s.inputs[u].name)) free.push_back(u);
    if (free.empty()) continue;
    for (std::size_t o = 0; o < assignmentCount(vars); ++o)
      for (std::size_t r = 0; r < rows; ++r) {
        const Assignment a = decode(s.inputs, r);
        for (std::size_t u : free) {
          if (a[u] == 0) continue;
          Assignment base = a;
          base[u] = 0;
          out.push_back({members, decode(vars, o), r, encode(s.inputs, base)});
        }
      }
  }
  return out;
}

std::vector<NsEquality> nsConstraints(const HyperDag& h) { return nsConstraints(bellScenario(h.base)); }

namespace {

// Columns (output assignments) at which the outputs in `e.outputs` take `e.outcome`.
std::vector<std::size_t> matchingColumns(const BellScenario& s, const NsEquality& e) {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < assignmentCount(s.outputs); ++c) {
    const Assignment a = decode(s.outputs, c);
    bool ok = true;
    for (std::size_t i = 0; i < e.outputs.size() && ok; ++i) ok = a[e.outputs[i]] == e.outcome[i];
    if (ok) cols.push_back(c);
  }
  return cols;
}

Kernel aligned(const Kernel& q, const BellScenario& s) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(q.outcomeNames()) != sorted(s.outputNames()) || sorted(q.indexNames()) != sorted(s.inputNames()))
    throw InvalidKernel("kernel variables do not match the graph's outputs and inputs");
  Kernel out = reorder(q, s.outputNames(), s.inputNames());
  if (out.outcomes() != s.outputs || out.index() != s.inputs)
    throw CardinalityMismatch("kernel cardinalities do not match the graph");
  return out;
}

}  // namespace

bool nsMember(const Kernel& q, const BellScenario& s) {
  const Kernel k = aligned(q, s);
  for (const auto& e : nsConstraints(s)) {
    Rational lhs, rhs;
    for (std::size_t c : matchingColumns(s, e)) {
      lhs += k.at(e.row, c);
      rhs += k.at(e.baseRow, c);
    }
    if (lhs != rhs) return false;
  }
  return true;
}

bool nsMember(const Kernel& q, const HyperDag& h) { return nsMember(q, bellScenario(h.base)); }

Rational instrumentalScore(const Kernel& p) {
  if (p.outcomes().size() != 2 || p.index().size() != 1)
    throw CardinalityMismatch("instrumental score needs a kernel p(a,b|x)");
  const int na = p.outcomes()[0].cardinality, nb = p.outcomes()[1].cardinality, nx = p.index()[0].cardinality;
  Rational best;
  for (int a = 0; a < na; ++a) {
    Rational sum;
    for (int b = 0; b < nb; ++b) {
      Rational m = p.at({a, b}, {0});
      for (int x = 1; x < nx; ++x) m = std::max(m, p.at({a, b}, {x}));
      sum += m;
    }
    if (a == 0 || sum > best) best = sum;
  }
  return best;
}

Kernel withUniformInputs(const Kernel& q) { return joint(q, uniformTable(q.index())); }

PsVerdict psMember(const Kernel& p, const CausalDag& g, const CopyNames& names) {
  PsVerdict verdict;
  const HyperDag h = buildHypergraph(g, names);
  BellScenario s;
  try {
    s = bellScenario(h.base);
  } catch (const MultiLatent& e) {
    verdict.reason = std::string("H(G) has several latent vertices (") + e.what() + "); use certificate mode";
    return verdict;
  } catch (const UnsupportedGraph& e) {
    verdict.reason = e.what();
    return verdict;
  }

  std::vector<Variable> roots;
  for (const auto& v : s.inputs)
    if (!h.copyNamed(v.name)) roots.push_back(v);
  std::vector<std::string> rootNames;
  for (const auto& v : roots) rootNames.push_back(v.name);
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(p.outcomeNames()) != sorted(s.outputNames()) || sorted(p.indexNames()) != sorted(rootNames))
    throw InvalidKernel("distribution must be a kernel over the graph's non-root vertices given its roots");
  const Kernel target = reorder(p, s.outputNames(), rootNames);

  const std::size_t cols = assignmentCount(s.outputs);
  const std::size_t rows = assignmentCount(s.inputs);
  LinearSystem lp;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) lp.addVariable("q" + std::to_string(r) + "_" + std::to_string(c));
  const int t = lp.addVariable("t");
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<int>(r * cols + c); };

  for (std::size_t r = 0; r < rows; ++r) {
    LinearForm f;
    for (std::size_t c = 0; c < cols; ++c) f[id(r, c)] = Rational(1);
    lp.addEquality(std::move(f), Rational(1));
  }
  for (const auto& e : nsConstraints(s)) {
    LinearForm f;
    for (std::size_t c : matchingColumns(s, e)) {
      f[id(e.row, c)] += Rational(1);
      f[id(e.baseRow, c)] -= Rational(1);
    }
    lp.addEquality(std::move(f), Rational(0));
  }
  // Position of each input in the H input list: a root of g, or a copy reading an output.
  std::vector<int> rootPos(s.inputs.size(), -1), sourcePos(s.inputs.size(), -1);
  for (std::size_t i = 0; i < s.inputs.size(); ++i) {
    if (const CopyVertex* c = h.copyNamed(s.inputs[i].name)) {
      const auto outs = s.outputNames();
      sourcePos[i] = static_cast<int>(std::find(outs.begin(), outs.end(), c->source) - outs.begin());
    } else {
      rootPos[i] = static_cast<int>(std::find(rootNames.begin(), rootNames.end(), s.inputs[i].name) - rootNames.begin());
    }
  }
  for (std::size_t i = 0; i < assignmentCount(roots); ++i) {
    const Assignment ra = decode(roots, i);
    for (std::size_t c = 0; c < cols; ++c) {
      const Assignment oa = decode(s.outputs, c);
      Assignment full(s.inputs.size());
      for (std::size_t k = 0; k < s.inputs.size(); ++k) full[k] = rootPos[k] >= 0 ? ra[rootPos[k]] : oa[sourcePos[k]];
      LinearForm f;
      f[id(encode(s.inputs, full), c)] = Rational(1);
      if (!target.at(i, c).isZero()) f[t] = -target.at(i, c);
      lp.addEquality(std::move(f), Rational(0));
    }
  }
  lp.setObjective({{t, Rational(1)}});

  const LpResult res = lpSolve(lp);
  if (res.status != LpResult::Status::Optimal || res.value.sign() <= 0) {
    verdict.status = PsVerdict::Status::NotMember;
    verdict.reason = res.status == LpResult::Status::Optimal ? "selection probability is zero" : "LP infeasible";
    return verdict;
  }
  verdict.status = PsVerdict::Status::Member;
  verdict.t = res.value;
  std::vector<Rational> values(res.assignment.begin(), res.assignment.begin() + static_cast<std::ptrdiff_t>(rows * cols));
  verdict.certificate = Kernel(s.outputs, s.inputs, std::move(values));
  return verdict;
}

PsVerdict checkLiftCertificate(const Kernel& p, const CausalDag& g, const Kernel& lift, const CopyNames& names) {
  PsVerdict verdict;
  const HyperDag h = buildHypergraph(g, names);
  std::vector<std::string> inputs;
  for (const auto& v : h.base.observed())
    if (h.base.parents(v).empty()) inputs.push_back(v);
  Kernel kernel = lift;
  Kernel table = lift;
  if (lift.isTable()) {
    std::vector<std::string> present;
    for (const auto& v : inputs)
      if (lift.hasVariable(v)) present.push_back(v);
    kernel = split(lift, present);
  } else {
    table = withUniformInputs(lift);
  }
  const NestedVerdict ci = checkIndependences(table, h.base);
  if (!ci.member) {
    verdict.status = PsVerdict::Status::NotMember;
    verdict.reason = "lift violates " + ci.violations.front().record.str() + " at " +
                     describe(ci.violations.front().witness);
    return verdict;
  }
  const Kernel projected = projectKernel(kernel, h);
  if (!sameKernel(projected, p)) {
    verdict.status = PsVerdict::Status::NotMember;
    verdict.reason = "lift does not project onto the distribution";
    return verdict;
  }
  verdict.status = PsVerdict::Status::Member;
  verdict.t = Rational(1);
  verdict.certificate = kernel;
  return verdict;
}

}  // namespace causalbox
