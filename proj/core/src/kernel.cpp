#include "causalbox/kernel.hpp"

#include <algorithm>
#include <set>

namespace causalbox {

std::size_t assignmentCount(const std::vector<Variable>& vars) {
  std::size_t n = 1;
  for (const auto& v : vars) n *= static_cast<std::size_t>(v.cardinality);
  return n;
}

std::size_t encode(const std::vector<Variable>& vars, const Assignment& values) {
  std::size_t code = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) code = code * vars[i].cardinality + values[i];
  return code;
}

Assignment decode(const std::vector<Variable>& vars, std::size_t code) {
  Assignment out(vars.size());
  for (std::size_t i = vars.size(); i-- > 0;) {
    out[i] = static_cast<int>(code % vars[i].cardinality);
    code /= vars[i].cardinality;
  }
  return out;
}

namespace {

int position(const std::vector<Variable>& vars, const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

NamedAssignment named(const std::vector<Variable>& vars, const Assignment& values) {
  NamedAssignment out;
  for (std::size_t i = 0; i < vars.size(); ++i) out[vars[i].name] = values[i];
  return out;
}

// For each code of `from`, the code of the sub-assignment restricted to `to` (a subset of `from`).
std::vector<std::size_t> restriction(const std::vector<Variable>& from, const std::vector<Variable>& to) {
  std::vector<int> pos;
  for (const auto& v : to) pos.push_back(position(from, v.name));
  const std::size_t n = assignmentCount(from);
  std::vector<std::size_t> out(n);
  Assignment sub(to.size());
  for (std::size_t c = 0; c < n; ++c) {
    Assignment full = decode(from, c);
    for (std::size_t i = 0; i < pos.size(); ++i) sub[i] = full[pos[i]];
    out[c] = encode(to, sub);
  }
  return out;
}

std::vector<Variable> select(const std::vector<Variable>& vars, const std::vector<std::string>& names) {
  std::vector<Variable> out;
  for (const auto& n : names) {
    int p = position(vars, n);
    if (p < 0) throw UnknownVariable(n);
    out.push_back(vars[p]);
  }
  return out;
}

}  // namespace

Kernel::Kernel(std::vector<Variable> outcomes, std::vector<Variable> index, std::vector<Rational> values)
    : Kernel(trusted(std::move(outcomes), std::move(index), std::move(values))) {
  std::string problem = checkNormalized(*this);
  if (!problem.empty()) throw InvalidKernel(problem);
}

Kernel Kernel::trusted(std::vector<Variable> outcomes, std::vector<Variable> index, std::vector<Rational> values) {
  std::set<std::string> names;
  for (const auto* list : {&outcomes, &index})
    for (const auto& v : *list) {
      if (v.cardinality < 1) throw InvalidKernel("variable '" + v.name + "' has nonpositive cardinality");
      if (!names.insert(v.name).second) throw InvalidKernel("variable '" + v.name + "' appears twice");
    }
  if (values.size() != assignmentCount(outcomes) * assignmentCount(index))
    throw InvalidKernel("table has " + std::to_string(values.size()) + " entries, expected " +
                        std::to_string(assignmentCount(outcomes) * assignmentCount(index)));
  Kernel k;
  k.outcomes_ = std::move(outcomes);
  k.index_ = std::move(index);
  k.values_ = std::move(values);
  return k;
}

std::vector<std::string> Kernel::outcomeNames() const {
  std::vector<std::string> out;
  for (const auto& v : outcomes_) out.push_back(v.name);
  return out;
}

std::vector<std::string> Kernel::indexNames() const {
  std::vector<std::string> out;
  for (const auto& v : index_) out.push_back(v.name);
  return out;
}

std::vector<Variable> Kernel::allVariables() const {
  std::vector<Variable> out = outcomes_;
  out.insert(out.end(), index_.begin(), index_.end());
  return out;
}

bool Kernel::hasVariable(const std::string& name) const {
  return position(outcomes_, name) >= 0 || position(index_, name) >= 0;
}

int Kernel::cardinality(const std::string& name) const {
  int p = position(outcomes_, name);
  if (p >= 0) return outcomes_[p].cardinality;
  p = position(index_, name);
  if (p >= 0) return index_[p].cardinality;
  throw UnknownVariable(name);
}

const Rational& Kernel::value(const NamedAssignment& assignment) const {
  auto lookup = [&](const std::vector<Variable>& vars) {
    Assignment a;
    for (const auto& v : vars) {
      auto it = assignment.find(v.name);
      if (it == assignment.end()) throw UnknownVariable(v.name);
      if (it->second < 0 || it->second >= v.cardinality)
        throw IndexOutOfRange(v.name + "=" + std::to_string(it->second) + " outside 0.." +
                              std::to_string(v.cardinality - 1));
      a.push_back(it->second);
    }
    return a;
  };
  return at(lookup(outcomes_), lookup(index_));
}

std::string checkNormalized(const Kernel& k) {
  const std::size_t cols = k.outcomeCount();
  for (std::size_t r = 0; r < k.indexCount(); ++r) {
    Rational sum;
    for (std::size_t c = 0; c < cols; ++c) {
      const Rational& v = k.at(r, c);
      if (v.sign() < 0) return "negative entry " + v.str();
      sum += v;
    }
    if (sum != Rational(1))
      return "row " + describe(named(k.index(), decode(k.index(), r))) + " sums to " + sum.str();
  }
  return {};
}

Kernel marginalize(const Kernel& k, const std::vector<std::string>& drop) {
  for (const auto& d : drop)
    if (position(k.outcomes(), d) < 0) throw UnknownVariable(d);
  std::vector<std::string> keep;
  for (const auto& v : k.outcomes())
    if (std::find(drop.begin(), drop.end(), v.name) == drop.end()) keep.push_back(v.name);
  return marginalizeTo(k, keep);
}

Kernel marginalizeTo(const Kernel& k, const std::vector<std::string>& keep) {
  std::vector<Variable> kept = select(k.outcomes(), keep);
  const auto map = restriction(k.outcomes(), kept);
  const std::size_t cols = k.outcomeCount();
  const std::size_t newCols = assignmentCount(kept);
  std::vector<Rational> values(k.indexCount() * newCols);
  for (std::size_t r = 0; r < k.indexCount(); ++r)
    for (std::size_t c = 0; c < cols; ++c) values[r * newCols + map[c]] += k.at(r, c);
  return Kernel::trusted(std::move(kept), k.index(), std::move(values));
}

Kernel condition(const Kernel& k, const NamedAssignment& event) {
  std::vector<int> pos;
  std::vector<int> want;
  for (const auto& [name, value] : event) {
    int p = position(k.outcomes(), name);
    if (p < 0) throw UnknownVariable(name);
    pos.push_back(p);
    want.push_back(value);
  }
  std::vector<Variable> rest;
  for (const auto& v : k.outcomes())
    if (!event.count(v.name)) rest.push_back(v);
  const auto map = restriction(k.outcomes(), rest);
  const std::size_t cols = k.outcomeCount();
  const std::size_t newCols = assignmentCount(rest);
  std::vector<bool> matches(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    Assignment a = decode(k.outcomes(), c);
    bool ok = true;
    for (std::size_t i = 0; i < pos.size(); ++i) ok = ok && a[pos[i]] == want[i];
    matches[c] = ok;
  }
  std::vector<Rational> values(k.indexCount() * newCols);
  for (std::size_t r = 0; r < k.indexCount(); ++r) {
    Rational mass;
    for (std::size_t c = 0; c < cols; ++c)
      if (matches[c]) mass += k.at(r, c);
    if (mass.isZero()) throw ZeroProbabilityEvent(named(k.index(), decode(k.index(), r)));
    for (std::size_t c = 0; c < cols; ++c)
      if (matches[c]) values[r * newCols + map[c]] = k.at(r, c) / mass;
  }
  return Kernel::trusted(std::move(rest), k.index(), std::move(values));
}

Kernel reorder(const Kernel& k, const std::vector<std::string>& outcomes, const std::vector<std::string>& index) {
  if (outcomes.size() != k.outcomes().size() || index.size() != k.index().size())
    throw InvalidKernel("reorder needs a permutation of the variables");
  std::vector<Variable> outs = select(k.outcomes(), outcomes);
  std::vector<Variable> idx = select(k.index(), index);
  const auto colMap = restriction(k.outcomes(), outs);
  const auto rowMap = restriction(k.index(), idx);
  const std::size_t cols = k.outcomeCount();
  std::vector<Rational> values(k.values().size());
  for (std::size_t r = 0; r < k.indexCount(); ++r)
    for (std::size_t c = 0; c < cols; ++c) values[rowMap[r] * cols + colMap[c]] = k.at(r, c);
  return Kernel::trusted(std::move(outs), std::move(idx), std::move(values));
}

bool sameKernel(const Kernel& a, const Kernel& b) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(a.outcomeNames()) != sorted(b.outcomeNames()) || sorted(a.indexNames()) != sorted(b.indexNames()))
    return false;
  for (const auto& v : a.allVariables())
    if (b.cardinality(v.name) != v.cardinality) return false;
  return reorder(b, a.outcomeNames(), a.indexNames()) == a;
}

std::optional<NamedAssignment> ciWitness(const Kernel& p, const std::vector<std::string>& a,
                                         const std::vector<std::string>& b, const std::vector<std::string>& z) {
  if (!p.isTable()) throw InvalidKernel("independence tests need a probability table");
  std::vector<std::string> keep = a;
  keep.insert(keep.end(), b.begin(), b.end());
  keep.insert(keep.end(), z.begin(), z.end());
  const Kernel m = marginalizeTo(p, keep);
  const std::vector<Variable> av = select(m.outcomes(), a);
  const std::vector<Variable> bv = select(m.outcomes(), b);
  const std::vector<Variable> zv = select(m.outcomes(), z);
  const std::size_t na = assignmentCount(av), nb = assignmentCount(bv), nz = assignmentCount(zv);
  // m is laid out as (a, b, z) with z least significant.
  auto at = [&](std::size_t ia, std::size_t ib, std::size_t iz) -> const Rational& {
    return m.values()[(ia * nb + ib) * nz + iz];
  };
  for (std::size_t iz = 0; iz < nz; ++iz) {
    Rational pz;
    std::vector<Rational> pa(na), pb(nb);
    for (std::size_t ia = 0; ia < na; ++ia)
      for (std::size_t ib = 0; ib < nb; ++ib) {
        const Rational& v = at(ia, ib, iz);
        pz += v;
        pa[ia] += v;
        pb[ib] += v;
      }
    if (pz.isZero()) continue;
    for (std::size_t ia = 0; ia < na; ++ia)
      for (std::size_t ib = 0; ib < nb; ++ib)
        if (at(ia, ib, iz) * pz != pa[ia] * pb[ib]) {
          NamedAssignment w = named(av, decode(av, ia));
          w.merge(named(bv, decode(bv, ib)));
          w.merge(named(zv, decode(zv, iz)));
          return w;
        }
  }
  return std::nullopt;
}

bool ciHolds(const Kernel& p, const std::vector<std::string>& a, const std::vector<std::string>& b,
             const std::vector<std::string>& z) {
  return !ciWitness(p, a, b, z).has_value();
}

Kernel joint(const Kernel& q, const Kernel& inputMarginal) {
  if (!inputMarginal.isTable()) throw InvalidKernel("input marginal must be a table");
  const Kernel m = reorder(inputMarginal, q.indexNames(), {});
  for (std::size_t i = 0; i < q.index().size(); ++i)
    if (m.outcomes()[i].cardinality != q.index()[i].cardinality)
      throw CardinalityMismatch("input marginal disagrees on '" + q.index()[i].name + "'");
  const std::size_t cols = q.outcomeCount();
  const std::size_t rows = q.indexCount();
  std::vector<Rational> values(cols * rows);
  // Table over (outcomes, index): index is least significant.
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) values[c * rows + r] = q.at(r, c) * m.values()[r];
  return Kernel::trusted(q.allVariables(), {}, std::move(values));
}

Kernel uniformTable(const std::vector<Variable>& vars) {
  const std::size_t n = assignmentCount(vars);
  return Kernel::trusted(vars, {}, std::vector<Rational>(n, Rational(1, static_cast<long>(n))));
}

Kernel split(const Kernel& table, const std::vector<std::string>& index) {
  if (!table.isTable()) throw InvalidKernel("split needs a probability table");
  std::vector<std::string> rest;
  for (const auto& v : table.outcomes())
    if (std::find(index.begin(), index.end(), v.name) == index.end()) rest.push_back(v.name);
  std::vector<std::string> order = rest;
  order.insert(order.end(), index.begin(), index.end());
  const Kernel t = reorder(table, order, {});
  std::vector<Variable> outs = select(t.outcomes(), rest);
  std::vector<Variable> idx = select(t.outcomes(), index);
  const std::size_t cols = assignmentCount(outs);
  const std::size_t rows = assignmentCount(idx);
  std::vector<Rational> values(cols * rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Rational mass;
    for (std::size_t c = 0; c < cols; ++c) mass += t.values()[c * rows + r];
    if (mass.isZero()) throw ZeroProbabilityEvent(named(idx, decode(idx, r)));
    for (std::size_t c = 0; c < cols; ++c) values[r * cols + c] = t.values()[c * rows + r] / mass;
  }
  return Kernel::trusted(std::move(outs), std::move(idx), std::move(values));
}

Kernel project(const Kernel& lifted, const HyperDag& h) {
  if (!lifted.isTable()) throw InvalidKernel("project needs a table over the lifted variables");
  const auto& vars = lifted.outcomes();
  std::vector<std::pair<int, int>> pairs;
  for (const auto& c : h.copies) {
    int cp = position(vars, c.name);
    int sp = position(vars, c.source);
    if (cp < 0) throw UnknownVariable(c.name);
    if (sp < 0) throw UnknownVariable(c.source);
    pairs.emplace_back(cp, sp);
  }
  std::vector<Variable> kept;
  for (const auto& v : vars)
    if (!h.copyNamed(v.name)) kept.push_back(v);
  const auto map = restriction(vars, kept);
  std::vector<Rational> values(assignmentCount(kept));
  Rational mass;
  for (std::size_t c = 0; c < lifted.outcomeCount(); ++c) {
    Assignment a = decode(vars, c);
    bool diagonal = std::all_of(pairs.begin(), pairs.end(), [&](auto p) { return a[p.first] == a[p.second]; });
    if (!diagonal) continue;
    values[map[c]] += lifted.values()[c];
    mass += lifted.values()[c];
  }
  if (mass.isZero()) throw ZeroSelectionProbability("selection event has probability zero");
  for (auto& v : values) v /= mass;
  return Kernel::trusted(std::move(kept), {}, std::move(values));
}

Kernel projectKernel(const Kernel& lifted, const HyperDag& h) {
  std::vector<std::pair<int, int>> pairs;  // (index position of copy, outcome position of source)
  for (const auto& c : h.copies) {
    int cp = position(lifted.index(), c.name);
    int sp = position(lifted.outcomes(), c.source);
    if (cp < 0) throw UnknownVariable(c.name);
    if (sp < 0) throw UnknownVariable(c.source);
    pairs.emplace_back(cp, sp);
  }
  std::vector<Variable> idx;
  std::vector<int> keptPos;
  for (std::size_t i = 0; i < lifted.index().size(); ++i)
    if (!h.copyNamed(lifted.index()[i].name)) {
      idx.push_back(lifted.index()[i]);
      keptPos.push_back(static_cast<int>(i));
    }
  const std::size_t cols = lifted.outcomeCount();
  const std::size_t rows = assignmentCount(idx);
  std::vector<Rational> values(rows * cols);
  Assignment full(lifted.index().size());
  for (std::size_t r = 0; r < rows; ++r) {
    Assignment reduced = decode(idx, r);
    for (std::size_t i = 0; i < keptPos.size(); ++i) full[keptPos[i]] = reduced[i];
    Rational mass;
    for (std::size_t c = 0; c < cols; ++c) {
      Assignment o = decode(lifted.outcomes(), c);
      for (auto [cp, sp] : pairs) full[cp] = o[sp];
      values[r * cols + c] = lifted.at(encode(lifted.index(), full), c);
      mass += values[r * cols + c];
    }
    if (mass.isZero())
      throw ZeroSelectionProbability("selection event has probability zero at " + describe(named(idx, reduced)));
    for (std::size_t c = 0; c < cols; ++c) values[r * cols + c] /= mass;
  }
  return Kernel::trusted(lifted.outcomes(), std::move(idx), std::move(values));
}

Kernel mix(const std::vector<std::pair<Rational, Kernel>>& parts) {
  if (parts.empty()) throw InvalidKernel("empty mixture");
  const Kernel& first = parts.front().second;
  std::vector<Rational> values(first.values().size());
  for (const auto& [w, k] : parts) {
    if (k.outcomes() != first.outcomes() || k.index() != first.index())
      throw InvalidKernel("mixture components disagree on variables");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += w * k.values()[i];
  }
  return Kernel(first.outcomes(), first.index(), std::move(values));
}

Rational chshScore(const Kernel& k, const Kernel& inputDist) {
  auto binary = [](const std::vector<Variable>& vs) {
    return vs.size() == 2 && vs[0].cardinality == 2 && vs[1].cardinality == 2;
  };
  if (!binary(k.outcomes()) || !binary(k.index()) || !inputDist.isTable() || !binary(inputDist.outcomes()))
    throw CardinalityMismatch("CHSH score needs two binary outputs, two binary inputs and a binary input table");
  Kernel inputs = inputDist;
  std::vector<std::string> idx = k.indexNames();
  if (inputs.hasVariable(idx[0]) && inputs.hasVariable(idx[1])) inputs = reorder(inputs, idx, {});
  Rational s;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) s += inputs.at({x, y}, {}) * k.at({a, b}, {x, y});
  return s;
}

}  // namespace causalbox
