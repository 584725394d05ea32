#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

using causalbox::Variable;

namespace {

struct Adjacency {
  std::vector<std::string> names;
  std::map<std::string, int> id;
  std::vector<std::set<int>> out, in;
};

Adjacency adjacency(const CausalDag& g) {
  Adjacency adj;
  for (const auto& v : g.vertices()) {
    adj.id[v.name] = static_cast<int>(adj.names.size());
    adj.names.push_back(v.name);
  }
  adj.out.resize(adj.names.size());
  adj.in.resize(adj.names.size());
  for (const auto& [from, to] : g.edges()) {
    adj.out[adj.id.at(from)].insert(adj.id.at(to));
    adj.in[adj.id.at(to)].insert(adj.id.at(from));
  }
  return adj;
}

std::set<int> descendantsOf(const Adjacency& adj, int v) {
  std::set<int> seen{v};
  std::vector<int> stack{v};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int c : adj.out[u])
      if (seen.insert(c).second) stack.push_back(c);
  }
  return seen;
}

bool pathOpen(const Adjacency& adj, const std::vector<int>& path, const std::set<int>& z) {
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const int prev = path[i - 1], v = path[i], next = path[i + 1];
    const bool collider = adj.out[prev].count(v) && adj.out[next].count(v);
    if (collider) {
      const auto desc = descendantsOf(adj, v);
      if (std::none_of(desc.begin(), desc.end(), [&](int d) { return z.count(d) != 0; })) return false;
    } else if (z.count(v)) {
      return false;
    }
  }
  return true;
}

bool openPathExists(const Adjacency& adj, std::vector<int>& path, std::vector<char>& onPath, const std::set<int>& targets,
                    const std::set<int>& z) {
  const int v = path.back();
  if (path.size() > 1 && targets.count(v)) return pathOpen(adj, path, z);
  std::set<int> next(adj.out[v].begin(), adj.out[v].end());
  next.insert(adj.in[v].begin(), adj.in[v].end());
  for (int u : next) {
    if (onPath[u]) continue;
    path.push_back(u);
    onPath[u] = 1;
    const bool open = openPathExists(adj, path, onPath, targets, z);
    onPath[u] = 0;
    path.pop_back();
    if (open) return true;
  }
  return false;
}

std::string vertexName(int i) { return std::string(1, static_cast<char>('A' + i)); }

Rational randomPositive(Rng& rng, int maxNumerator) {
  return Rational(std::uniform_int_distribution<long>(1, maxNumerator)(rng));
}

int respond(int f, int input) { return f == 0 ? 0 : f == 1 ? 1 : f == 2 ? input : 1 - input; }

const std::vector<Variable> kAB{{"A", 2}, {"B", 2}};
const std::vector<Variable> kXY{{"X", 2}, {"Y", 2}};

}  // namespace

bool pathSeparated(const CausalDag& g, const std::vector<std::string>& a, const std::vector<std::string>& b,
                   const std::vector<std::string>& z) {
  const Adjacency adj = adjacency(g);
  std::set<int> zs, targets;
  for (const auto& v : z) zs.insert(adj.id.at(v));
  for (const auto& v : b) targets.insert(adj.id.at(v));
  for (const auto& start : a) {
    std::vector<int> path{adj.id.at(start)};
    std::vector<char> onPath(adj.names.size(), 0);
    onPath[path.front()] = 1;
    if (openPathExists(adj, path, onPath, targets, zs)) return false;
  }
  return true;
}

CausalDag randomDag(Rng& rng, int observed, int latents, double edgeProbability) {
  std::vector<int> order(observed);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(edgeProbability);
  CausalDag g;
  for (int i = 0; i < observed; ++i) g.addObserved(vertexName(i));
  for (int i = 0; i < observed; ++i)
    for (int j = i + 1; j < observed; ++j)
      if (coin(rng)) g.addEdge(vertexName(order[i]), vertexName(order[j]));
  for (int l = 0; l < latents && observed >= 2; ++l) {
    std::vector<int> members(observed);
    std::iota(members.begin(), members.end(), 0);
    std::shuffle(members.begin(), members.end(), rng);
    const int size = std::uniform_int_distribution<int>(2, std::min(observed, 3))(rng);
    const std::string name = "L" + std::to_string(l + 1);
    g.addLatent(name);
    for (int k = 0; k < size; ++k) g.addEdge(name, vertexName(members[k]));
  }
  return g;
}

std::vector<CausalDag> allOrderedDags(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<CausalDag> out;
  for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
    CausalDag g;
    for (int i = 0; i < n; ++i) g.addObserved(vertexName(i));
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask & (1u << s)) g.addEdge(vertexName(slots[s].first), vertexName(slots[s].second));
    out.push_back(g);
  }
  return out;
}

Kernel randomBayesNet(const CausalDag& g, Rng& rng, int latentCardinality) {
  const Adjacency adj = adjacency(g);
  const std::size_t n = adj.names.size();
  std::vector<int> card(n);
  for (std::size_t v = 0; v < n; ++v)
    card[v] = g.isObserved(adj.names[v]) ? g.cardinality(adj.names[v]) : latentCardinality;

  // cpt[v][parentCode * card[v] + value], parents in ascending id order
  std::vector<std::vector<Rational>> cpt(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t rows = 1;
    for (int p : adj.in[v]) rows *= card[p];
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Rational> w(card[v]);
      Rational total;
      for (auto& x : w) total += x = randomPositive(rng, 9);
      for (auto& x : w) cpt[v].push_back(x / total);
    }
  }

  std::vector<int> observedIds;
  std::vector<Variable> vars;
  for (const auto& name : g.observed()) {
    observedIds.push_back(adj.id.at(name));
    vars.push_back({name, g.cardinality(name)});
  }
  std::size_t cells = 1;
  for (int o : observedIds) cells *= card[o];
  std::vector<Rational> table(cells);

  std::vector<int> value(n, 0);
  while (true) {
    Rational prob(1);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t code = 0;
      for (int p : adj.in[v]) code = code * card[p] + value[p];
      prob *= cpt[v][code * card[v] + value[v]];
    }
    std::size_t cell = 0;
    for (int o : observedIds) cell = cell * card[o] + value[o];
    table[cell] += prob;

    std::size_t k = n;
    while (k > 0 && ++value[k - 1] == card[k - 1]) value[--k] = 0;
    if (k == 0) break;
  }
  return Kernel::table(vars, table);
}

std::vector<Rational> randomWeights(Rng& rng, std::size_t n, int maxNumerator) {
  std::vector<Rational> w(n);
  Rational total;
  for (auto& x : w) total += x = randomPositive(rng, maxNumerator);
  for (auto& x : w) x /= total;
  return w;
}

Kernel prBox(int alpha, int beta, int gamma) {
  std::vector<Rational> v(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma)) v[(x * 2 + y) * 4 + a * 2 + b] = Rational(1, 2);
  return Kernel(kAB, kXY, v);
}

Kernel deterministicBox(int fa, int fb) {
  std::vector<Rational> v(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) v[(x * 2 + y) * 4 + respond(fa, x) * 2 + respond(fb, y)] = Rational(1);
  return Kernel(kAB, kXY, v);
}

std::vector<Kernel> nsVertexList() {
  std::vector<Kernel> out;
  for (int fa = 0; fa < 4; ++fa)
    for (int fb = 0; fb < 4; ++fb) out.push_back(deterministicBox(fa, fb));
  for (int k = 0; k < 8; ++k) out.push_back(prBox(k >> 2, (k >> 1) & 1, k & 1));
  return out;
}

Kernel randomNsBox(Rng& rng) {
  const auto vertices = nsVertexList();
  const std::size_t parts = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
  std::vector<Kernel> chosen;
  for (std::size_t i = 0; i < parts; ++i)
    chosen.push_back(vertices[std::uniform_int_distribution<std::size_t>(0, vertices.size() - 1)(rng)]);
  return mixture(chosen, randomWeights(rng, parts));
}

Kernel mixture(const std::vector<Kernel>& parts, const std::vector<Rational>& weights) {
  std::vector<Rational> v(parts.front().values().size());
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += weights[p] * parts[p].values()[i];
  return Kernel(parts.front().outcomes(), parts.front().index(), v);
}

Kernel instrumentalProjection(const Kernel& q) {
  std::vector<Rational> v(8);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) v[x * 4 + a * 2 + b] = q.values()[(x * 2 + a) * 4 + a * 2 + b];
  return Kernel(kAB, {{"X", 2}}, v);
}

Rational chshClassicalMax() {
  Rational best;
  for (int s = 0; s < 16; ++s) {
    const int a[2] = {s & 1, (s >> 1) & 1}, b[2] = {(s >> 2) & 1, (s >> 3) & 1};
    int wins = 0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) wins += (a[x] ^ b[y]) == (x & y);
    best = std::max(best, Rational(wins, 4));
  }
  return best;
}

Rational instrumentalValue(const Kernel& p) {
  Rational best;
  for (int a = 0; a < 2; ++a) {
    Rational sum;
    for (int b = 0; b < 2; ++b) sum += std::max(p.values()[a * 2 + b], p.values()[4 + a * 2 + b]);
    best = std::max(best, sum);
  }
  return best;
}

std::string outcomeRows(const Kernel& k) {
  const std::size_t cols = k.values().size() / 2;
  std::string out;
  for (std::size_t row = 0; row < 2; ++row)
    for (std::size_t col = 0; col < cols; ++col)
      if (k.values()[row * cols + col] == Rational(1)) {
        if (row) out += " ";
        for (int bit = 2; bit >= 0; --bit) out += static_cast<char>('0' + ((col >> bit) & 1));
      }
  return out;
}

}  // namespace oracle
