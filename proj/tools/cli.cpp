#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "causalbox/bell.hpp"
#include "causalbox/fixtures.hpp"
#include "causalbox/io.hpp"
#include "causalbox/mdag.hpp"
#include "causalbox/nested_markov.hpp"
#include "causalbox/polytope.hpp"
#include "json.hpp"

namespace causalbox::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kRejected = 2;

struct Options {
  std::string format = "text";
  std::string graph, dist, model, functional, vertexSet = "classical";
  std::string a, b, fixed, certificate, lift, out, inputs, fixture;
  std::vector<std::string> copyNames;
  int jobs = 1;
  bool tables = false, lifted = false;
  int alpha = 0, beta = 0, gamma = 0, index = 0;
};

class Context {
 public:
  Context(const Options& o, std::ostream& out, std::ostream& err) : opt(o), out_(out), err_(err) {}

  const Options& opt;
  bool machine() const { return opt.format == "machine"; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  void emit(const ordered_json& doc) { out_ << doc.dump(2) << "\n"; }

  // Writes to --out when given, otherwise to stdout.
  void emitDocument(const std::string& text) {
    if (opt.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(opt.out);
    if (!f) throw ParseError("cannot write '" + opt.out + "'");
    f << text;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // Entries may be written name=value; only the name matters for a conditioning set.
    item = item.substr(0, item.find('='));
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string joined(const std::vector<std::string>& v, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

CausalDag loadGraph(const Options& o) {
  if (o.graph.empty()) throw ParseError("--graph is required");
  CausalDag g = readGraphFile(o.graph);
  const auto report = validate(g);
  if (!report.ok()) throw InvalidGraph("invalid graph: " + joined(report.violations, "; "));
  return g;
}

Kernel loadDist(const Options& o) {
  if (o.dist.empty()) throw ParseError("--dist is required");
  return readDistributionFile(o.dist);
}

CopyNames copyNames(const Options& o) {
  CopyNames names;
  for (const auto& spec : o.copyNames) {
    const auto colon = spec.find(':');
    const auto eq = spec.find('=');
    if (colon == std::string::npos || eq == std::string::npos || eq < colon)
      throw ParseError("--copy-name expects SOURCE:CHILD=NAME, got '" + spec + "'");
    names[{spec.substr(0, colon), spec.substr(colon + 1, eq - colon - 1)}] = spec.substr(eq + 1);
  }
  return names;
}

std::vector<std::string> roots(const CausalDag& g) {
  std::vector<std::string> out;
  for (const auto& v : g.observed())
    if (g.parents(v).empty()) out.push_back(v);
  return out;
}

// A kernel over the non-root observed vertices given the roots.
Kernel asKernel(const Kernel& dist, const CausalDag& g) {
  if (!dist.isTable()) return dist;
  std::vector<std::string> index;
  for (const auto& r : roots(g))
    if (dist.hasVariable(r)) index.push_back(r);
  return split(dist, index);
}

// A table over every observed vertex; kernels get uniform inputs.
Kernel asTable(const Kernel& dist) { return dist.isTable() ? dist : withUniformInputs(dist); }

ordered_json recordJson(const ConstraintRecord& r) {
  ordered_json j;
  if (r.kind == ConstraintRecord::Kind::CI) {
    j["kind"] = "CI";
    j["a"] = r.ci.a;
    j["b"] = r.ci.b;
    j["z"] = r.ci.z;
  } else {
    j["kind"] = "VERMA";
    j["recipe"] = r.verma.recipe.str();
    j["independent_of"] = r.verma.independentOf;
  }
  j["text"] = r.str();
  return j;
}

ordered_json assignmentJson(const NamedAssignment& a) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : a) j[k] = v;
  return j;
}

ordered_json strategyJson(const Vertex& v) {
  ordered_json j = ordered_json::object();
  for (const auto& [name, response] : v.strategy) j[name] = response;
  return j;
}

std::string strategyText(const Vertex& v) {
  std::string s;
  for (const auto& [name, response] : v.strategy) {
    if (!s.empty()) s += " ";
    s += name + "=[";
    for (std::size_t i = 0; i < response.size(); ++i) s += (i ? " " : "") + std::to_string(response[i]);
    s += "]";
  }
  return s;
}

// ---- graph ----

int graphCheck(Context& c) {
  if (c.opt.graph.empty()) throw ParseError("--graph is required");
  const CausalDag g = readGraphFile(c.opt.graph);
  const auto report = validate(g);
  if (c.machine()) {
    ordered_json j;
    j["valid"] = report.ok();
    j["violations"] = report.violations;
    if (report.ok()) j["order"] = topologicalOrder(g);
    c.emit(j);
  } else if (report.ok()) {
    c.out() << "valid\norder: " << joined(topologicalOrder(g), " ") << "\n";
  } else {
    c.out() << "invalid\n";
    for (const auto& v : report.violations) c.out() << "  " << v << "\n";
  }
  return report.ok() ? kOk : kRejected;
}

int graphMdag(Context& c) {
  const MDag m = toMdag(loadGraph(c.opt), splitList(c.opt.fixed));
  if (c.machine()) {
    ordered_json j;
    j["random"] = m.random();
    j["fixed"] = m.fixed();
    j["edges"] = ordered_json::array();
    for (const auto& [from, to] : m.edges()) j["edges"].push_back({from, to});
    j["faces"] = m.faces();
    c.emit(j);
  } else {
    c.out() << m.str();
  }
  return kOk;
}

int graphDistricts(Context& c) {
  const MDag m = toMdag(loadGraph(c.opt), splitList(c.opt.fixed));
  const auto ds = districts(m);
  if (c.machine()) {
    ordered_json j;
    j["districts"] = ordered_json::array();
    for (const auto& d : ds) j["districts"].push_back(d.members);
    c.emit(j);
  } else {
    for (const auto& d : ds) c.out() << "{" << joined(d.members) << "}\n";
  }
  return kOk;
}

int graphDsep(Context& c) {
  const CausalDag g = loadGraph(c.opt);
  const auto a = splitList(c.opt.a), b = splitList(c.opt.b), z = splitList(c.opt.fixed);
  if (a.empty() || b.empty()) throw ParseError("--a and --b are required");
  const bool sep = dSeparated(g, a, b, z);
  if (c.machine()) {
    ordered_json j;
    j["a"] = a;
    j["b"] = b;
    j["given"] = z;
    j["d_separated"] = sep;
    c.emit(j);
  } else {
    c.out() << "{" << joined(a) << "} and {" << joined(b) << "} are " << (sep ? "d-separated" : "d-connected");
    if (!z.empty()) c.out() << " given {" << joined(z) << "}";
    c.out() << "\n";
  }
  return sep ? kOk : kRejected;
}

// ---- constraints / hyper / project ----

int constraintsEnumerate(Context& c) {
  const auto records = enumerateConstraints(loadGraph(c.opt));
  if (c.machine()) {
    ordered_json j;
    j["records"] = ordered_json::array();
    std::size_t verma = 0;
    for (const auto& r : records) {
      j["records"].push_back(recordJson(r));
      verma += r.kind == ConstraintRecord::Kind::Verma;
    }
    j["ci_count"] = records.size() - verma;
    j["verma_count"] = verma;
    c.emit(j);
  } else {
    for (const auto& r : records) c.out() << r.str() << "\n";
  }
  return kOk;
}

int hyperBuild(Context& c) {
  const HyperDag h = buildHypergraph(loadGraph(c.opt), copyNames(c.opt));
  if (!c.opt.out.empty()) c.emitDocument(writeGraph(h.base));
  if (c.machine()) {
    ordered_json j;
    j["graph"] = ordered_json::parse(writeGraph(h.base));
    j["copies"] = ordered_json::array();
    for (const auto& cp : h.copies)
      j["copies"].push_back(ordered_json{{"name", cp.name}, {"source", cp.source}, {"child", cp.child}});
    c.emit(j);
    return kOk;
  }
  if (h.copies.empty()) c.out() << "already Bell-type; no copies added\n";
  for (const auto& cp : h.copies) c.out() << "copy " << cp.name << " of " << cp.source << " -> " << cp.child << "\n";
  if (c.opt.out.empty()) c.out() << writeGraph(h.base);
  return kOk;
}

int projectCommand(Context& c) {
  const HyperDag h = buildHypergraph(loadGraph(c.opt), copyNames(c.opt));
  const Kernel lifted = loadDist(c.opt);
  const Kernel p = lifted.isTable() ? project(lifted, h) : projectKernel(lifted, h);
  c.emitDocument(writeDistribution(p));
  return kOk;
}

// ---- member ----

int reportCi(Context& c, const std::string& model, const NestedVerdict& v, std::size_t checked) {
  if (c.machine()) {
    ordered_json j;
    j["model"] = model;
    j["member"] = v.member;
    j["records_checked"] = checked;
    j["violations"] = ordered_json::array();
    for (const auto& viol : v.violations)
      j["violations"].push_back(ordered_json{
          {"record", viol.record.str()}, {"witness", assignmentJson(viol.witness)}, {"detail", viol.detail}});
    j["indeterminate"] = ordered_json::array();
    for (const auto& r : v.indeterminate) j["indeterminate"].push_back(r.str());
    c.emit(j);
  } else if (v.member) {
    c.out() << "in " << model << "(G): " << checked << " constraints hold";
    if (!v.indeterminate.empty()) c.out() << ", " << v.indeterminate.size() << " indeterminate";
    c.out() << "\n";
    for (const auto& r : v.indeterminate) c.out() << "  indeterminate " << r.str() << "\n";
  } else {
    c.out() << "not in " << model << "(G): " << v.violations.size() << " violated constraints\n";
    for (const auto& viol : v.violations)
      c.out() << "  " << viol.record.str() << " at " << describe(viol.witness) << " (" << viol.detail << ")\n";
  }
  return v.member ? kOk : kRejected;
}

int reportPs(Context& c, const std::string& model, const PsVerdict& v) {
  if (v.status == PsVerdict::Status::Unsupported) {
    c.err() << "unsupported: " << v.reason << "\n";
    return kInputError;
  }
  const bool member = v.status == PsVerdict::Status::Member;
  if (member && !c.opt.certificate.empty()) {
    std::ofstream f(c.opt.certificate);
    if (!f) throw ParseError("cannot write '" + c.opt.certificate + "'");
    f << writeDistribution(*v.certificate);
  }
  if (c.machine()) {
    ordered_json j;
    j["model"] = model;
    j["member"] = member;
    if (member) {
      j["t"] = v.t.str();
      j["certificate"] = ordered_json::parse(writeDistribution(*v.certificate));
    } else {
      j["reason"] = v.reason;
    }
    c.emit(j);
  } else if (member) {
    c.out() << "in " << model << "(G): lift found (t = " << v.t << ")";
    if (!c.opt.certificate.empty()) c.out() << ", certificate written to " << c.opt.certificate;
    c.out() << "\n";
  } else {
    c.out() << "not in " << model << "(G): " << v.reason << "\n";
  }
  return member ? kOk : kRejected;
}

int memberNs(Context& c, const CausalDag& g, const Kernel& dist) {
  if (!isBellType(g)) return reportPs(c, "NS", psMember(asKernel(dist, g), g, copyNames(c.opt)));
  const BellScenario s = bellScenario(g);
  const Kernel q = asKernel(dist, g);
  const bool member = nsMember(q, s);
  std::string failing;
  if (!member) {
    const Kernel aligned = reorder(q, s.outputNames(), s.inputNames());
    for (const auto& e : nsConstraints(s)) {
      Rational l, r;
      for (std::size_t col = 0; col < aligned.outcomeCount(); ++col) {
        const Assignment a = decode(s.outputs, col);
        bool ok = true;
        for (std::size_t i = 0; i < e.outputs.size(); ++i) ok = ok && a[e.outputs[i]] == e.outcome[i];
        if (!ok) continue;
        l += aligned.at(e.row, col);
        r += aligned.at(e.baseRow, col);
      }
      if (l != r) {
        failing = e.str(s);
        break;
      }
    }
  }
  if (c.machine()) {
    ordered_json j;
    j["model"] = "NS";
    j["member"] = member;
    if (!member) j["reason"] = "signalling: " + failing;
    c.emit(j);
  } else if (member) {
    c.out() << "in NS(G): every no-signalling equality holds\n";
  } else {
    c.out() << "not in NS(G): signalling: " << failing << "\n";
  }
  return member ? kOk : kRejected;
}

int memberC(Context& c, const CausalDag& g, const Kernel& dist) {
  const ClassicalVerdict v = classicalMember(asKernel(dist, g), g, copyNames(c.opt));
  if (c.machine()) {
    ordered_json j;
    j["model"] = "C";
    j["member"] = v.member;
    if (v.member) {
      j["weights"] = ordered_json::array();
      for (std::size_t i = 0; i < v.weights.size(); ++i)
        if (!v.weights[i].isZero())
          j["weights"].push_back(
              ordered_json{{"vertex", i}, {"weight", v.weights[i].str()}, {"strategy", strategyJson(v.vertices[i])}});
    } else {
      j["reason"] = "LP infeasible";
    }
    c.emit(j);
  } else if (v.member) {
    c.out() << "in C(G): convex combination of classical vertices\n";
    for (std::size_t i = 0; i < v.weights.size(); ++i)
      if (!v.weights[i].isZero())
        c.out() << "  " << v.weights[i] << " x vertex " << i << " " << strategyText(v.vertices[i]) << "\n";
  } else {
    c.out() << "not in C(G): LP infeasible\n";
  }
  return v.member ? kOk : kRejected;
}

int memberCommand(Context& c) {
  const CausalDag g = loadGraph(c.opt);
  const Kernel dist = loadDist(c.opt);
  const std::string& m = c.opt.model;
  if (m == "I") return reportCi(c, "I", checkIndependences(asTable(dist), g), ciConstraints(g).size());
  if (m == "N") {
    const auto records = enumerateConstraints(g);
    return reportCi(c, "N", checkNested(asTable(dist), g), records.size());
  }
  if (m == "NS") return memberNs(c, g, dist);
  if (m == "PS") {
    const Kernel p = asKernel(dist, g);
    if (!c.opt.lift.empty())
      return reportPs(c, "PS", checkLiftCertificate(p, g, readDistributionFile(c.opt.lift), copyNames(c.opt)));
    return reportPs(c, "PS", psMember(p, g, copyNames(c.opt)));
  }
  return memberC(c, g, dist);
}

// ---- score / optimize ----

int scoreCommand(Context& c) {
  const Kernel dist = loadDist(c.opt);
  Rational value;
  const std::string& f = c.opt.functional;
  if (f == "chsh") {
    const Kernel inputs = c.opt.inputs.empty() ? uniformTable(dist.index()) : readDistributionFile(c.opt.inputs);
    value = chshScore(dist, inputs);
  } else if (f == "gyni") {
    value = gyniFunctional().apply(dist);
  } else {
    value = instrumentalScore(dist);
  }
  if (c.machine()) {
    c.emit(ordered_json{{"functional", f}, {"value", value.str()}});
  } else {
    c.out() << f << " = " << value << "\n";
  }
  return kOk;
}

std::string nsVertexName(std::size_t i) {
  if (i < 16) return "local " + std::to_string(i);
  const std::size_t k = i - 16;
  return "PR(" + std::to_string(k >> 2) + "," + std::to_string((k >> 1) & 1) + "," + std::to_string(k & 1) + ")";
}

int optimizeCommand(Context& c) {
  const Functional f = c.opt.functional == "chsh" ? chshFunctional() : gyniFunctional();
  ordered_json j;
  std::string label;
  Maximum best;
  if (c.opt.vertexSet == "ns") {
    best = maximizeFunctional(f, nsVertices());
    label = nsVertexName(best.argmax);
    j["vertex"] = label;
  } else {
    const auto vertices = enumerateClassicalVertices(loadGraph(c.opt), c.opt.jobs, copyNames(c.opt));
    best = maximizeFunctional(f, vertices);
    label = "vertex " + std::to_string(best.argmax) + " " + strategyText(vertices[best.argmax]);
    j["vertex"] = best.argmax;
    j["strategy"] = strategyJson(vertices[best.argmax]);
  }
  if (c.machine()) {
    ordered_json doc{{"functional", c.opt.functional}, {"vertex_set", c.opt.vertexSet}, {"value", best.value.str()}};
    doc.update(j);
    c.emit(doc);
  } else {
    c.out() << "max " << c.opt.functional << " = " << best.value << " at " << label << "\n";
  }
  return kOk;
}

// ---- vertices ----

std::string outcomeString(const Kernel& k, std::size_t row) {
  for (std::size_t col = 0; col < k.outcomeCount(); ++col)
    if (k.at(row, col) == Rational(1)) {
      std::string s;
      for (int v : decode(k.outcomes(), col)) s += std::to_string(v);
      return s;
    }
  return "?";
}

// Vertices grouped by how the first output responds to the index: constant responses first.
void printTables(Context& c, const std::vector<Vertex>& vertices) {
  if (vertices.empty()) return;
  const Kernel& first = vertices.front().table;
  std::vector<std::string> keys;
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    std::string key;
    for (std::size_t r = 0; r < first.indexCount(); ++r) key += outcomeString(vertices[i].table, r).substr(0, 1);
    if (!groups.count(key)) keys.push_back(key);
    groups[key].push_back(i);
  }
  std::stable_partition(keys.begin(), keys.end(), [](const std::string& k) {
    return std::all_of(k.begin(), k.end(), [&](char ch) { return ch == k.front(); });
  });
  std::stable_sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
    const bool ca = std::all_of(a.begin(), a.end(), [&](char ch) { return ch == a.front(); });
    const bool cb = std::all_of(b.begin(), b.end(), [&](char ch) { return ch == b.front(); });
    if (ca != cb) return ca;
    return ca && a < b;
  });
  std::string header;
  for (const auto& v : first.index()) header += (header.empty() ? "" : ",") + v.name;
  std::string outs;
  for (const auto& v : first.outcomes()) outs += v.name;
  c.out() << "# columns: " << outs << " per " << header << " row\n";
  for (std::size_t k = 0; k < keys.size(); ++k) {
    c.out() << "case " << k + 1 << ": " << first.outcomes().front().name << "(" << header << ") = " << keys[k] << "\n";
    for (std::size_t i : groups[keys[k]]) {
      for (std::size_t r = 0; r < first.indexCount(); ++r) c.out() << (r ? " " : "") << outcomeString(vertices[i].table, r);
      c.out() << "\n";
    }
  }
}

int verticesCommand(Context& c) {
  const CausalDag g = loadGraph(c.opt);
  std::vector<Vertex> vertices;
  if (c.opt.lifted)
    vertices = enumerateHVertices(buildHypergraph(g, copyNames(c.opt)), c.opt.jobs);
  else
    vertices = enumerateClassicalVertices(g, c.opt.jobs, copyNames(c.opt));
  if (c.machine()) {
    ordered_json j;
    j["count"] = vertices.size();
    j["vertices"] = ordered_json::array();
    for (const auto& v : vertices)
      j["vertices"].push_back(
          ordered_json{{"strategy", strategyJson(v)}, {"table", ordered_json::parse(writeDistribution(v.table))}});
    c.emit(j);
    return kOk;
  }
  c.out() << vertices.size() << " vertices\n";
  if (c.opt.tables) printTables(c, vertices);
  return kOk;
}

// ---- decompose-ns / fixtures ----

int decomposeCommand(Context& c) {
  const Kernel q = loadDist(c.opt);
  NsDecomposition d;
  try {
    d = decomposeNsBox(q);
  } catch (const NotNoSignalling& e) {
    if (c.machine())
      c.emit(ordered_json{{"no_signalling", false}, {"reason", e.what()}});
    else
      c.out() << "not no-signalling: " << e.what() << "\n";
    return kRejected;
  }
  if (c.machine()) {
    ordered_json j;
    j["no_signalling"] = true;
    if (d.pr)
      j["pr"] = ordered_json{{"alpha", (*d.pr)[0]}, {"beta", (*d.pr)[1]}, {"gamma", (*d.pr)[2]}, {"weight", d.prWeight.str()}};
    else
      j["pr"] = nullptr;
    j["locals"] = ordered_json::array();
    for (std::size_t i = 0; i < d.localWeights.size(); ++i)
      if (!d.localWeights[i].isZero())
        j["locals"].push_back(ordered_json{{"index", i}, {"weight", d.localWeights[i].str()}});
    c.emit(j);
  } else {
    if (d.pr)
      c.out() << "PR box (" << (*d.pr)[0] << "," << (*d.pr)[1] << "," << (*d.pr)[2] << ") weight " << d.prWeight << "\n";
    else
      c.out() << "local mixture, no PR box\n";
    for (std::size_t i = 0; i < d.localWeights.size(); ++i)
      if (!d.localWeights[i].isZero()) c.out() << "local " << i << " weight " << d.localWeights[i] << "\n";
  }
  return kOk;
}

int fixturesEmit(Context& c) {
  const std::string& name = c.opt.fixture;
  const auto graphs = fixtures::graphNames();
  if (std::find(graphs.begin(), graphs.end(), name) != graphs.end()) {
    c.emitDocument(writeGraph(fixtures::graph(name)));
    return kOk;
  }
  Kernel k;
  if (name == "pr-box")
    k = fixtures::prBox(c.opt.alpha, c.opt.beta, c.opt.gamma);
  else if (name == "local-box")
    k = fixtures::localBox(c.opt.index);
  else if (name == "gyni-box")
    k = fixtures::gyniBox();
  else if (name == "gyni-projected")
    k = fixtures::gyniProjected();
  else if (name == "swapping-box")
    k = fixtures::swappingBox();
  else
    throw ParseError("unknown fixture '" + name + "'");
  c.emitDocument(writeDistribution(k));
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact causal-model membership: constraints, lifts, polytopes", "causalbox"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  auto graphOpt = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--graph", o.graph, "Graph document");
    if (required) opt->required();
  };
  auto copyOpt = [&](CLI::App* s) {
    s->add_option("--copy-name", o.copyNames, "Name for a copy vertex, SOURCE:CHILD=NAME (repeatable)");
  };

  auto* graph = app.add_subcommand("graph", "Graph validation and structure");
  graph->require_subcommand(1);
  auto* check = graph->add_subcommand("check", "Validate a graph and print a topological order");
  graphOpt(check);
  auto* mdag = graph->add_subcommand("mdag", "Print the associated mDAG");
  graphOpt(mdag);
  mdag->add_option("--fixed", o.fixed, "Comma-separated fixed vertices");
  auto* dists = graph->add_subcommand("districts", "Print the districts of the mDAG");
  graphOpt(dists);
  dists->add_option("--fixed", o.fixed, "Comma-separated fixed vertices");
  auto* dsep = graph->add_subcommand("dsep", "Test d-separation");
  graphOpt(dsep);
  dsep->add_option("--a", o.a, "Comma-separated vertex set")->required();
  dsep->add_option("--b", o.b, "Comma-separated vertex set")->required();
  dsep->add_option("--fixed", o.fixed, "Comma-separated conditioning set");

  auto* constraints = app.add_subcommand("constraints", "Equality constraints of the nested Markov model");
  constraints->require_subcommand(1);
  auto* enumerate = constraints->add_subcommand("enumerate", "List CI and Verma records");
  graphOpt(enumerate);

  auto* hyper = app.add_subcommand("hyper", "Bell-type hypergraph lift");
  hyper->require_subcommand(1);
  auto* build = hyper->add_subcommand("build", "Build the lifted graph");
  graphOpt(build);
  copyOpt(build);
  build->add_option("--out", o.out, "Write the lifted graph document here");

  auto* proj = app.add_subcommand("project", "Post-select a lifted distribution back onto the graph");
  graphOpt(proj);
  copyOpt(proj);
  proj->add_option("--dist", o.dist, "Lifted distribution")->required();
  proj->add_option("--out", o.out, "Write the projected distribution here");

  auto* member = app.add_subcommand("member", "Decide membership in a causal model");
  graphOpt(member);
  copyOpt(member);
  member->add_option("--dist", o.dist, "Distribution document")->required();
  member->add_option("--model", o.model, "I, N, NS, PS or C")->required()->check(
      CLI::IsMember({"I", "N", "NS", "PS", "C"}));
  member->add_option("--certificate", o.certificate, "Write the PS lift certificate here");
  member->add_option("--lift", o.lift, "Check this candidate lift instead of solving (PS)");

  auto* score = app.add_subcommand("score", "Evaluate a Bell functional on a distribution");
  score->add_option("--dist", o.dist, "Distribution document")->required();
  score->add_option("--functional", o.functional, "chsh, gyni or instrumental")->required()->check(
      CLI::IsMember({"chsh", "gyni", "instrumental"}));
  score->add_option("--inputs", o.inputs, "Input distribution for chsh (default uniform)");

  auto* optimize = app.add_subcommand("optimize", "Maximize a functional over a vertex set");
  graphOpt(optimize, false);
  copyOpt(optimize);
  optimize->add_option("--functional", o.functional, "chsh or gyni")->required()->check(
      CLI::IsMember({"chsh", "gyni"}));
  optimize->add_option("--vertex-set", o.vertexSet, "classical or ns")->check(CLI::IsMember({"classical", "ns"}));
  optimize->add_option("--jobs", o.jobs, "Threads for vertex enumeration")->check(CLI::PositiveNumber);

  auto* vertices = app.add_subcommand("vertices", "Enumerate classical vertices");
  graphOpt(vertices);
  copyOpt(vertices);
  vertices->add_flag("--tables", o.tables, "Print tables grouped by the first output's response");
  vertices->add_flag("--lifted", o.lifted, "Enumerate the lifted graph's vertices instead");
  vertices->add_option("--jobs", o.jobs, "Threads for vertex enumeration")->check(CLI::PositiveNumber);

  auto* decompose = app.add_subcommand("decompose-ns", "Split a bipartite no-signalling box into PR and local boxes");
  decompose->add_option("--dist", o.dist, "Box p(a,b|x,y)")->required();

  auto* fixturesCmd = app.add_subcommand("fixtures", "Built-in graphs and distributions");
  fixturesCmd->require_subcommand(1);
  auto* emit = fixturesCmd->add_subcommand(
      "emit",
      "Print a fixture: pr-box, local-box (index i = 4 fA + fB, f in const0, const1, id, not), gyni-box, "
      "gyni-projected, swapping-box, or a graph (mediation, chsh, instrumental, gyni, swapping, triangle, "
      "five-district)");
  emit->add_option("name", o.fixture, "Fixture name")->required();
  emit->add_option("--alpha", o.alpha, "PR box alpha")->check(CLI::Range(0, 1));
  emit->add_option("--beta", o.beta, "PR box beta")->check(CLI::Range(0, 1));
  emit->add_option("--gamma", o.gamma, "PR box gamma")->check(CLI::Range(0, 1));
  emit->add_option("--index", o.index, "Local box index")->check(CLI::Range(0, 15));
  emit->add_option("--out", o.out, "Write the document here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  Context c(o, out, err);
  try {
    if (check->parsed()) return graphCheck(c);
    if (mdag->parsed()) return graphMdag(c);
    if (dists->parsed()) return graphDistricts(c);
    if (dsep->parsed()) return graphDsep(c);
    if (enumerate->parsed()) return constraintsEnumerate(c);
    if (build->parsed()) return hyperBuild(c);
    if (proj->parsed()) return projectCommand(c);
    if (member->parsed()) return memberCommand(c);
    if (score->parsed()) return scoreCommand(c);
    if (optimize->parsed()) return optimizeCommand(c);
    if (vertices->parsed()) return verticesCommand(c);
    if (decompose->parsed()) return decomposeCommand(c);
    if (emit->parsed()) return fixturesEmit(c);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << app.help();
  return kInputError;
}

}  // namespace causalbox::cli
