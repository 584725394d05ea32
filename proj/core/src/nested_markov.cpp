#include "causalbox/nested_markov.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace causalbox {

namespace {

std::vector<std::string> observedOrder(const CausalDag& dag, const std::vector<std::string>& order) {
  std::vector<std::string> out;
  for (const auto& v : order.empty() ? topologicalOrder(dag) : order)
    if (dag.isObserved(v)) out.push_back(v);
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<std::string> observedParents(const CausalDag& dag, const std::vector<std::string>& d) {
  std::set<std::string> out;
  for (const auto& v : d)
    for (const auto& p : dag.parents(v))
      if (dag.isObserved(p) && !has(d, p)) out.insert(p);
  return {out.begin(), out.end()};
}

// Observed given-list of v under the chain rule restricted to d and its parents.
std::vector<std::string> chainGiven(const std::vector<std::string>& order, const std::string& v,
                                    const std::vector<std::string>& d, const std::vector<std::string>& pa) {
  std::vector<std::string> given;
  for (const auto& u : order) {
    if (u == v) break;
    if (has(d, u) || has(pa, u)) given.push_back(u);
  }
  return given;
}

}  // namespace

Recipe districtRecipe(const CausalDag& dag, const District& d, const std::vector<std::string>& order) {
  const auto ord = observedOrder(dag, order);
  const auto pa = observedParents(dag, d.members);
  Recipe r;
  for (const auto& v : ord)
    if (has(d.members, v)) r.terms.push_back({v, chainGiven(ord, v, d.members, pa), nullptr});
  r.canonicalize();
  return r;
}

Kernel districtKernel(const Kernel& p, const CausalDag& dag, const District& d, const std::vector<std::string>& order) {
  const auto ord = observedOrder(dag, order);
  const auto pa = observedParents(dag, d.members);
  std::vector<Variable> outs, idx;
  for (const auto& v : ord) {
    if (has(d.members, v)) outs.push_back({v, p.cardinality(v)});
    if (has(pa, v)) idx.push_back({v, p.cardinality(v)});
  }
  struct Factor {
    std::vector<Variable> numVars;  // head last
    Kernel num, den;
  };
  std::vector<Factor> factors;
  for (const auto& v : ord) {
    if (!has(d.members, v)) continue;
    Factor f;
    for (const auto& g : chainGiven(ord, v, d.members, pa)) f.numVars.push_back({g, p.cardinality(g)});
    std::vector<std::string> given;
    for (const auto& g : f.numVars) given.push_back(g.name);
    auto numNames = given;
    numNames.push_back(v);
    f.numVars.push_back({v, p.cardinality(v)});
    f.num = marginalizeTo(p, numNames);
    f.den = marginalizeTo(p, given);
    factors.push_back(std::move(f));
  }
  const std::size_t cols = assignmentCount(outs);
  const std::size_t rows = assignmentCount(idx);
  std::vector<Rational> values(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    NamedAssignment a;
    const Assignment ia = decode(idx, r);
    for (std::size_t i = 0; i < idx.size(); ++i) a[idx[i].name] = ia[i];
    for (std::size_t c = 0; c < cols; ++c) {
      const Assignment oa = decode(outs, c);
      for (std::size_t i = 0; i < outs.size(); ++i) a[outs[i].name] = oa[i];
      Rational prod(1);
      for (const auto& f : factors) {
        const Rational& den = f.den.value(a);
        if (den.isZero()) {
          NamedAssignment where;
          for (std::size_t i = 0; i + 1 < f.numVars.size(); ++i) where[f.numVars[i].name] = a[f.numVars[i].name];
          throw ZeroDivision(where);
        }
        prod *= f.num.value(a) / den;
      }
      values[r * cols + c] = std::move(prod);
    }
  }
  return Kernel::trusted(std::move(outs), std::move(idx), std::move(values));
}

namespace {

class Enumerator {
 public:
  explicit Enumerator(const CausalDag& dag) : dag_(dag) {
    int i = 0;
    for (const auto& v : topologicalOrder(dag))
      if (dag.isObserved(v)) rank_[v] = i++;
    explore({toMdag(dag), true, {}});
  }

  std::vector<VermaRecord> records() const {
    std::vector<VermaRecord> out;
    for (const auto& [key, rec] : vermas_) out.push_back(rec);
    return out;
  }

 private:
  struct Node {
    MDag m;
    bool joint;  // kernel is the marginal of p over m's random vertices (no fixed vertices)
    Recipe k;
  };

  std::vector<std::string> byRank(std::vector<std::string> v) const {
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return rank_.at(a) < rank_.at(b); });
    return v;
  }

  // A district of its own ancestral subgraph has a kernel that is a plain conditional of p,
  // so any independence it exhibits is already an ordinary independence statement.
  bool ciType(const std::vector<std::string>& d) const {
    std::vector<std::string> an;
    for (const auto& v : ancestors(dag_, d))
      if (dag_.isObserved(v)) an.push_back(v);
    const MDag full = toMdag(dag_);
    std::vector<Edge> edges;
    for (const auto& e : full.edges())
      if (has(an, e.first) && has(an, e.second)) edges.push_back(e);
    std::vector<std::vector<std::string>> faces;
    for (auto f : full.faces()) {
      f.erase(std::remove_if(f.begin(), f.end(), [&](const auto& v) { return !has(an, v); }), f.end());
      faces.push_back(std::move(f));
    }
    for (const auto& dist : districts(MDag(an, {}, edges, faces)))
      if (has(dist.members, d.front())) return dist.members == d;
    return false;
  }

  Term conditional(const Node& n, const std::string& v) const {
    std::vector<std::string> pre;
    for (const auto& u : n.m.random())
      if (rank_.at(u) < rank_.at(v)) pre.push_back(u);
    auto marginal = [&](const std::vector<std::string>& keep) {
      Recipe r = n.k;
      for (const auto& u : n.m.random())
        if (!has(keep, u)) r.summed.push_back(u);
      r.canonicalize();
      return sumOutTrivial(std::move(r));
    };
    auto withV = pre;
    withV.push_back(v);
    const Recipe num = marginal(withV);
    const Recipe den = marginal(pre);
    if (num.summed == den.summed && num.terms.size() == den.terms.size() + 1) {
      std::multiset<std::string> rest;
      for (const auto& t : den.terms) rest.insert(t.str());
      const Term* extra = nullptr;
      bool ok = true;
      for (const auto& t : num.terms) {
        auto it = rest.find(t.str());
        if (it != rest.end()) {
          rest.erase(it);
        } else if (!extra) {
          extra = &t;
        } else {
          ok = false;
        }
      }
      if (ok && extra && rest.empty() && extra->head == v) {
        bool bound = has(num.summed, extra->head);
        for (const auto& g : extra->given) bound = bound || has(num.summed, g);
        if (!bound) return *extra;
      }
    }
    auto given = pre;
    given.insert(given.end(), n.m.fixed().begin(), n.m.fixed().end());
    return {v, byRank(given), std::make_shared<const Recipe>(n.k)};
  }

  Recipe districtQ(const Node& n, const District& d) const {
    const auto pa = n.m.parentsOf(d.members);
    const auto ord = byRank([&] {
      auto all = n.m.random();
      all.insert(all.end(), n.m.fixed().begin(), n.m.fixed().end());
      return all;
    }());
    Recipe r;
    for (const auto& v : ord) {
      if (!has(d.members, v)) continue;
      if (n.joint)
        r.terms.push_back({v, chainGiven(ord, v, d.members, pa), nullptr});
      else
        r.terms.push_back(conditional(n, v));
    }
    r.canonicalize();
    return r;
  }

  void explore(const Node& n) {
    const std::string key = n.m.key() + "#" + (n.joint ? std::string("joint") : n.k.str());
    if (!seen_.insert(key).second) return;

    const auto ds = districts(n.m);
    const auto paR = n.m.parentsOf(n.m.random());
    const bool idleFixed = std::any_of(n.m.fixed().begin(), n.m.fixed().end(),
                                       [&](const auto& w) { return !has(paR, w); });
    if (ds.size() >= 2 || idleFixed) {
      for (const auto& d : ds) {
        const Recipe q = (!n.joint && d.members == n.m.random()) ? n.k : districtQ(n, d);
        if (!ciType(d.members)) {
          auto allowed = d.members;
          for (const auto& p : n.m.parentsOf(d.members)) allowed.push_back(p);
          VermaRecord rec{q, {}};
          for (const auto& f : q.freeVariables())
            if (!has(allowed, f)) rec.independentOf.push_back(f);
          if (!rec.independentOf.empty()) {
            const std::string s = ConstraintRecord::fromVerma(rec).str();
            vermas_.emplace(s, std::move(rec));
          }
        }
        if (ds.size() >= 2 && d.members.size() >= 2) explore({subgraph(n.m, d), false, q});
      }
    }
    if (n.m.random().size() >= 2) {
      for (const auto& v : n.m.childless()) {
        Recipe k;
        if (!n.joint) {
          k = n.k;
          k.summed.push_back(v);
          k.canonicalize();
          k = sumOutTrivial(std::move(k));
        }
        explore({n.m.withoutRandom(v), n.joint, std::move(k)});
      }
    }
  }

  const CausalDag& dag_;
  std::map<std::string, int> rank_;
  std::set<std::string> seen_;
  std::map<std::string, VermaRecord> vermas_;
};

}  // namespace

std::vector<ConstraintRecord> enumerateConstraints(const CausalDag& dag) {
  std::vector<ConstraintRecord> out;
  for (auto& s : ciConstraints(dag)) out.push_back(ConstraintRecord::fromCi(std::move(s)));
  for (auto& v : Enumerator(dag).records()) out.push_back(ConstraintRecord::fromVerma(std::move(v)));
  return out;
}

// ---- evaluation ----

std::optional<Rational> PartialTable::at(const NamedAssignment& a) const {
  Assignment values_of;
  for (const auto& v : vars) {
    auto it = a.find(v.name);
    if (it == a.end()) throw UnknownVariable(v.name);
    values_of.push_back(it->second);
  }
  const std::size_t c = encode(vars, values_of);
  if (!defined[c]) return std::nullopt;
  return values[c];
}

namespace {

std::vector<std::size_t> restrictionMap(const std::vector<Variable>& from, const std::vector<Variable>& to) {
  std::vector<int> pos;
  for (const auto& v : to) {
    int p = -1;
    for (std::size_t i = 0; i < from.size(); ++i)
      if (from[i].name == v.name) p = static_cast<int>(i);
    pos.push_back(p);
  }
  const std::size_t n = assignmentCount(from);
  std::vector<std::size_t> out(n);
  Assignment sub(to.size());
  for (std::size_t c = 0; c < n; ++c) {
    const Assignment full = decode(from, c);
    for (std::size_t i = 0; i < pos.size(); ++i) sub[i] = full[pos[i]];
    out[c] = encode(to, sub);
  }
  return out;
}

std::vector<Variable> unionVars(const std::vector<Variable>& a, const std::vector<Variable>& b) {
  std::map<std::string, int> m;
  for (const auto& v : a) m[v.name] = v.cardinality;
  for (const auto& v : b) m[v.name] = v.cardinality;
  std::vector<Variable> out;
  for (const auto& [name, card] : m) out.push_back({name, card});
  return out;
}

PartialTable multiply(const PartialTable& a, const PartialTable& b) {
  PartialTable out;
  out.vars = unionVars(a.vars, b.vars);
  const auto ma = restrictionMap(out.vars, a.vars);
  const auto mb = restrictionMap(out.vars, b.vars);
  const std::size_t n = assignmentCount(out.vars);
  out.values.resize(n);
  out.defined.assign(n, 1);
  for (std::size_t c = 0; c < n; ++c) {
    const bool da = a.defined[ma[c]], db = b.defined[mb[c]];
    const Rational& va = a.values[ma[c]];
    const Rational& vb = b.values[mb[c]];
    if ((da && va.isZero()) || (db && vb.isZero())) continue;
    if (da && db)
      out.values[c] = va * vb;
    else
      out.defined[c] = 0;
  }
  return out;
}

PartialTable sumOut(const PartialTable& t, const std::vector<std::string>& drop) {
  PartialTable out;
  for (const auto& v : t.vars)
    if (!has(drop, v.name)) out.vars.push_back(v);
  const auto m = restrictionMap(t.vars, out.vars);
  const std::size_t n = assignmentCount(out.vars);
  out.values.resize(n);
  out.defined.assign(n, 1);
  for (std::size_t c = 0; c < t.values.size(); ++c) {
    if (!t.defined[c])
      out.defined[m[c]] = 0;
    else
      out.values[m[c]] += t.values[c];
  }
  return out;
}

PartialTable ratio(const PartialTable& num, const PartialTable& den) {
  PartialTable out = num;
  const auto m = restrictionMap(num.vars, den.vars);
  for (std::size_t c = 0; c < out.values.size(); ++c) {
    if (!den.defined[m[c]] || den.values[m[c]].isZero() || !num.defined[c]) {
      out.defined[c] = 0;
      out.values[c] = Rational();
    } else {
      out.values[c] = num.values[c] / den.values[m[c]];
    }
  }
  return out;
}

PartialTable fromKernel(const Kernel& table) {
  PartialTable out;
  std::vector<std::string> names;
  for (const auto& v : table.outcomes()) names.push_back(v.name);
  std::sort(names.begin(), names.end());
  const Kernel sorted = reorder(table, names, {});
  out.vars = sorted.outcomes();
  out.values = sorted.values();
  out.defined.assign(out.values.size(), 1);
  return out;
}

PartialTable conditionalTable(const PartialTable& joint, const std::string& head,
                              const std::vector<std::string>& given) {
  std::vector<std::string> drop;
  for (const auto& v : joint.vars)
    if (v.name != head && !has(given, v.name)) drop.push_back(v.name);
  const PartialTable num = sumOut(joint, drop);
  return ratio(num, sumOut(num, {head}));
}

}  // namespace

PartialTable evaluate(const Recipe& recipe, const Kernel& p) {
  const PartialTable full = fromKernel(p);
  PartialTable prod;
  prod.values = {Rational(1)};
  prod.defined = {1};
  for (const auto& t : recipe.terms) {
    const PartialTable source = t.base ? evaluate(*t.base, p) : full;
    prod = multiply(prod, conditionalTable(source, t.head, t.given));
  }
  std::vector<std::string> absent;
  for (const auto& s : recipe.summed)
    if (std::none_of(prod.vars.begin(), prod.vars.end(), [&](const Variable& v) { return v.name == s; }))
      absent.push_back(s);
  PartialTable out = sumOut(prod, recipe.summed);
  for (const auto& s : absent)
    for (auto& v : out.values) v *= Rational(p.cardinality(s));
  return out;
}

std::optional<Violation> checkRecord(const ConstraintRecord& record, const Kernel& p, bool* indeterminate) {
  if (indeterminate) *indeterminate = false;
  if (record.kind == ConstraintRecord::Kind::CI) {
    auto w = ciWitness(p, {record.ci.a}, {record.ci.b}, record.ci.z);
    if (!w) return std::nullopt;
    return Violation{record, *w, "p(a,b,z)p(z) differs from p(a,z)p(b,z)"};
  }
  const PartialTable t = evaluate(record.verma.recipe, p);
  const auto& indep = record.verma.independentOf;
  std::vector<Variable> rest;
  for (const auto& v : t.vars)
    if (!has(indep, v.name)) rest.push_back(v);
  const auto group = restrictionMap(t.vars, rest);
  std::vector<int> reference(assignmentCount(rest), -1);
  bool undefined = false;
  for (std::size_t c = 0; c < t.values.size(); ++c) {
    if (!t.defined[c]) {
      undefined = true;
      continue;
    }
    int& ref = reference[group[c]];
    if (ref < 0) {
      ref = static_cast<int>(c);
      continue;
    }
    if (t.values[c] != t.values[ref]) {
      NamedAssignment w, base;
      const Assignment a = decode(t.vars, c), b = decode(t.vars, ref);
      for (std::size_t i = 0; i < t.vars.size(); ++i) {
        w[t.vars[i].name] = a[i];
        base[t.vars[i].name] = b[i];
      }
      return Violation{record, w,
                       "value " + t.values[c].str() + " differs from " + t.values[ref].str() + " at " + describe(base)};
    }
  }
  if (indeterminate) *indeterminate = undefined;
  return std::nullopt;
}

namespace {

NestedVerdict checkAll(const Kernel& p, const CausalDag& dag, const std::vector<ConstraintRecord>& records) {
  if (!p.isTable()) throw InvalidKernel("membership tests need a table over the observed vertices");
  auto obs = dag.observed();
  auto vars = p.outcomeNames();
  std::sort(obs.begin(), obs.end());
  std::sort(vars.begin(), vars.end());
  if (obs != vars) throw InvalidKernel("table variables do not match the observed vertices of the graph");
  NestedVerdict verdict;
  for (const auto& r : records) {
    bool undefined = false;
    if (auto v = checkRecord(r, p, &undefined)) {
      verdict.member = false;
      verdict.violations.push_back(std::move(*v));
    } else if (undefined) {
      verdict.indeterminate.push_back(r);
    }
  }
  return verdict;
}

}  // namespace

NestedVerdict checkNested(const Kernel& p, const CausalDag& dag) {
  return checkAll(p, dag, enumerateConstraints(dag));
}

NestedVerdict checkIndependences(const Kernel& p, const CausalDag& dag) {
  std::vector<ConstraintRecord> records;
  for (auto& s : ciConstraints(dag)) records.push_back(ConstraintRecord::fromCi(std::move(s)));
  return checkAll(p, dag, records);
}

}  // namespace causalbox
