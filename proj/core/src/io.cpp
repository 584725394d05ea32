#include "causalbox/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace causalbox {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + "." + key + " is missing");
  return obj.at(key);
}

std::string stringField(const json& obj, const std::string& key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

int cardinalityField(const json& obj, const std::string& where) {
  const json& v = field(obj, "cardinality", where);
  if (!v.is_number_integer() || v.get<long>() < 1)
    throw ParseError(where + ".cardinality must be a positive integer");
  return v.get<int>();
}

json parseJson(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

std::vector<Variable> variableList(const json& doc, const std::string& key, bool required) {
  std::vector<Variable> out;
  if (!doc.contains(key)) {
    if (required) throw ParseError(key + " is missing");
    return out;
  }
  const json& list = doc.at(key);
  if (!list.is_array()) throw ParseError(key + " must be a list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = key + "[" + std::to_string(i) + "]";
    out.push_back({stringField(list[i], "name", where), cardinalityField(list[i], where)});
  }
  return out;
}

std::string keyOf(const Assignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
  return out;
}

}  // namespace

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CausalDag parseGraph(const std::string& text) {
  const json doc = parseJson(text);
  const json& vertices = field(doc, "vertices", "graph");
  if (!vertices.is_array()) throw ParseError("graph.vertices must be a list");
  CausalDag dag;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const std::string name = stringField(vertices[i], "name", where);
    const std::string kind = stringField(vertices[i], "kind", where);
    if (kind == "latent")
      dag.addLatent(name);
    else if (kind == "observed")
      dag.addObserved(name, cardinalityField(vertices[i], where));
    else
      throw ParseError(where + ".kind must be \"observed\" or \"latent\"");
  }
  const json& edges = field(doc, "edges", "graph");
  if (!edges.is_array()) throw ParseError("graph.edges must be a list");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("edges[" + std::to_string(i) + "] must be a [from, to] pair of names");
    dag.addEdge(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return dag;
}

CausalDag readGraphFile(const std::string& path) { return parseGraph(readFile(path)); }

std::string writeGraph(const CausalDag& dag) {
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  for (const auto& v : dag.vertices()) {
    ordered_json entry;
    entry["name"] = v.name;
    entry["kind"] = v.kind == VertexKind::Latent ? "latent" : "observed";
    if (v.kind == VertexKind::Observed) entry["cardinality"] = v.cardinality;
    doc["vertices"].push_back(entry);
  }
  doc["edges"] = ordered_json::array();
  for (const auto& [from, to] : dag.edges()) doc["edges"].push_back({from, to});
  return doc.dump(2) + "\n";
}

Kernel parseDistribution(const std::string& text) {
  const json doc = parseJson(text);
  if (!doc.is_object()) throw ParseError("distribution must be an object");
  std::vector<Variable> outs = variableList(doc, "variables", true);
  std::vector<Variable> idx = variableList(doc, "index_variables", false);
  std::vector<Variable> all = outs;
  all.insert(all.end(), idx.begin(), idx.end());
  const std::size_t cols = assignmentCount(outs);
  const std::size_t rows = assignmentCount(idx);
  std::vector<Rational> values(cols * rows);
  const json& table = field(doc, "table", "distribution");
  if (!table.is_object()) throw ParseError("table must be an object");
  for (const auto& [key, value] : table.items()) {
    Assignment a;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        a.push_back(std::stoi(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw ParseError("table key \"" + key + "\" is not a list of integers");
      }
    }
    if (a.size() != all.size()) throw ParseError("table key \"" + key + "\" has the wrong number of values");
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] < 0 || a[i] >= all[i].cardinality)
        throw ParseError("table key \"" + key + "\" is out of range for " + all[i].name);
    Rational r;
    if (value.is_string())
      r = Rational::parse(value.get<std::string>());
    else if (value.is_number_integer())
      r = Rational(value.get<long>());
    else
      throw ParseError("table[\"" + key + "\"] must be a rational string");
    Assignment o(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(outs.size()));
    Assignment i(a.begin() + static_cast<std::ptrdiff_t>(outs.size()), a.end());
    values[encode(idx, i) * cols + encode(outs, o)] = r;
  }
  try {
    return Kernel(std::move(outs), std::move(idx), std::move(values));
  } catch (const InvalidKernel& e) {
    throw ParseError(std::string("table: ") + e.what());
  }
}

Kernel readDistributionFile(const std::string& path) { return parseDistribution(readFile(path)); }

std::string writeDistribution(const Kernel& k) {
  ordered_json doc;
  auto vars = [](const std::vector<Variable>& vs) {
    ordered_json list = ordered_json::array();
    for (const auto& v : vs) list.push_back(ordered_json{{"name", v.name}, {"cardinality", v.cardinality}});
    return list;
  };
  doc["variables"] = vars(k.outcomes());
  doc["index_variables"] = vars(k.index());
  ordered_json table = ordered_json::object();
  for (std::size_t c = 0; c < k.outcomeCount(); ++c)
    for (std::size_t r = 0; r < k.indexCount(); ++r) {
      Assignment a = decode(k.outcomes(), c);
      const Assignment i = decode(k.index(), r);
      a.insert(a.end(), i.begin(), i.end());
      table[keyOf(a)] = k.at(r, c).str();
    }
  doc["table"] = table;
  return doc.dump(2) + "\n";
}

}  // namespace causalbox
