#include "causalbox/constraint.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace causalbox {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string list(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + lower(names[i]);
  return out;
}

}  // namespace

std::string Term::str() const {
  std::string out = base ? "q[" + base->str() + "](" : "p(";
  out += lower(head);
  if (!given.empty()) out += "|" + list(given);
  return out + ")";
}

std::string Recipe::str() const {
  std::string out;
  if (!summed.empty()) out = "sum_{" + list(summed) + "} ";
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " " : "") + terms[i].str();
  if (terms.empty()) out += "1";
  return out;
}

std::vector<std::string> Recipe::freeVariables() const {
  std::set<std::string> vars;
  for (const auto& t : terms) {
    vars.insert(t.head);
    vars.insert(t.given.begin(), t.given.end());
  }
  for (const auto& s : summed) vars.erase(s);
  return {vars.begin(), vars.end()};
}

void Recipe::canonicalize() {
  std::sort(summed.begin(), summed.end());
  summed.erase(std::unique(summed.begin(), summed.end()), summed.end());
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.str() < b.str(); });
}

Recipe sumOutTrivial(Recipe r) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto s = r.summed.begin(); s != r.summed.end(); ++s) {
      int headAt = -1;
      bool elsewhere = false;
      for (std::size_t i = 0; i < r.terms.size(); ++i) {
        const Term& t = r.terms[i];
        if (std::find(t.given.begin(), t.given.end(), *s) != t.given.end()) elsewhere = true;
        if (t.head == *s) {
          if (headAt >= 0) elsewhere = true;
          headAt = static_cast<int>(i);
        }
      }
      if (headAt < 0 || elsewhere) continue;
      r.terms.erase(r.terms.begin() + headAt);
      r.summed.erase(s);
      changed = true;
      break;
    }
  }
  r.canonicalize();
  return r;
}

ConstraintRecord ConstraintRecord::fromCi(CiStatement s) {
  ConstraintRecord r;
  r.kind = Kind::CI;
  r.ci = std::move(s);
  return r;
}

ConstraintRecord ConstraintRecord::fromVerma(VermaRecord v) {
  ConstraintRecord r;
  r.kind = Kind::Verma;
  r.verma = std::move(v);
  return r;
}

std::string ConstraintRecord::str() const {
  if (kind == Kind::CI) return "CI: " + ci.str();
  return "VERMA: " + verma.recipe.str() + " ⟂ " + list(verma.independentOf);
}

}  // namespace causalbox
