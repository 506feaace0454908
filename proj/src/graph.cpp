#include "consensus/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "consensus/rng.hpp"

namespace consensus {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("Graph: need at least one vertex");
  for (auto& e : edges_) {
    if (e.i < 0 || e.i >= n_ || e.j < 0 || e.j >= n_)
      throw std::out_of_range("Graph: edge index out of range");
    if (e.i == e.j) throw std::invalid_argument("Graph: self-loop not allowed");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw std::invalid_argument("Graph: edge weight must be positive and finite");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
      throw std::invalid_argument("Graph: duplicate edge");
}

std::vector<double> Graph::degrees() const {
  std::vector<double> d(n_, 0.0);
  for (const auto& e : edges_) {
    d[e.i] += e.w;
    d[e.j] += e.w;
  }
  return d;
}

double Graph::max_degree() const {
  double m = 0.0;
  for (double d : degrees()) m = std::max(m, d);
  return m;
}

Graph make_path(int n) {
  if (n < 2) throw std::invalid_argument("make_path: n >= 2 required");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(e));
}

Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("make_cycle: n >= 3 required");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  e.push_back({0, n - 1, 1.0});
  return Graph(n, std::move(e));
}

Graph make_star(int n) {
  if (n < 2) throw std::invalid_argument("make_star: n >= 2 required");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.push_back({0, i, 1.0});
  return Graph(n, std::move(e));
}

Graph make_complete(int n) {
  if (n < 2) throw std::invalid_argument("make_complete: n >= 2 required");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return Graph(n, std::move(e));
}

Graph make_complete_bipartite(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("make_complete_bipartite: parts must be nonempty");
  std::vector<Edge> e;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) e.push_back({i, p + j, 1.0});
  return Graph(p + q, std::move(e));
}

namespace {

Graph watts_strogatz_once(int n, int k, double p, std::mt19937_64& rng) {
  // Ring lattice: i connected to i+-1..k/2 (mod n), then each clockwise edge
  // is rewired with probability p to a uniformly drawn non-neighbour.
  std::vector<std::set<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= k / 2; ++j) {
      int v = (i + j) % n;
      adj[i].insert(v);
      adj[v].insert(i);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= k / 2; ++j) {
      int v = (i + j) % n;
      if (uniform_unit(rng) >= p) continue;
      if (static_cast<int>(adj[i].size()) >= n - 1) continue;  // already saturated
      int w;
      do {
        w = static_cast<int>(uniform_index(rng, static_cast<uint64_t>(n)));
      } while (w == i || adj[i].count(w));
      if (!adj[i].count(v)) continue;  // this edge was rewired away earlier
      adj[i].erase(v);
      adj[v].erase(i);
      adj[i].insert(w);
      adj[w].insert(i);
    }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int v : adj[i])
      if (i < v) edges.push_back({i, v, 1.0});
  return Graph(n, std::move(edges));
}

Graph barabasi_albert_once(int n, int m0, int m, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  std::vector<int> degree(n, 0);
  // Attachment targets are drawn proportionally to degree by sampling the
  // repeated-endpoint list.
  std::vector<int> endpoints;
  for (int i = 0; i < m0; ++i)
    for (int j = i + 1; j < m0; ++j) {
      edges.push_back({i, j, 1.0});
      degree[i]++;
      degree[j]++;
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  for (int v = m0; v < n; ++v) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < m) {
      int t = endpoints[uniform_index(rng, endpoints.size())];
      targets.insert(t);
    }
    for (int t : targets) {
      edges.push_back({t, v, 1.0});
      degree[t]++;
      degree[v]++;
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

constexpr int kConnectivityRetries = 100;

}  // namespace

Graph make_watts_strogatz(int n, int k, double p, uint64_t seed) {
  if (n < 3) throw std::invalid_argument("make_watts_strogatz: n >= 3 required");
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("make_watts_strogatz: k must be even and >= 2");
  if (k >= n) throw std::invalid_argument("make_watts_strogatz: k < n required");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("make_watts_strogatz: p in [0,1] required");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    Graph g = watts_strogatz_once(n, k, p, rng);
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("make_watts_strogatz: no connected instance within retry bound");
}

Graph make_barabasi_albert(int n, int m0, int m, uint64_t seed) {
  if (m0 < 2) throw std::invalid_argument("make_barabasi_albert: m0 >= 2 required");
  if (m < 1 || m > m0) throw std::invalid_argument("make_barabasi_albert: 1 <= m <= m0 required");
  if (n < m0) throw std::invalid_argument("make_barabasi_albert: n >= m0 required");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    Graph g = barabasi_albert_once(n, m0, m, rng);
    if (is_connected(g)) return g;  // always connected, but keep the same contract
  }
  throw std::runtime_error("make_barabasi_albert: no connected instance within retry bound");
}

Graph gen_named(const std::string& family, int n, const GenParams& params) {
  if (n < 2) throw std::invalid_argument("gen_named: n >= 2 required");
  auto need_seed = [&]() {
    if (!params.seed) throw std::invalid_argument("gen_named: family '" + family + "' requires a seed");
    return *params.seed;
  };
  if (family == "path") return make_path(n);
  if (family == "cycle") return make_cycle(n);
  if (family == "star") return make_star(n);
  if (family == "complete") return make_complete(n);
  if (family == "complete_bipartite" || family == "bipartite") {
    int p = params.part_p, q = params.part_q;
    if (p + q != n) throw std::invalid_argument("gen_named: complete_bipartite needs p + q == n");
    return make_complete_bipartite(p, q);
  }
  if (family == "watts_strogatz" || family == "ws")
    return make_watts_strogatz(n, params.ring_k, params.rewire_p, need_seed());
  if (family == "barabasi_albert" || family == "ba")
    return make_barabasi_albert(n, params.clique_m0, params.attach_m, need_seed());
  throw std::invalid_argument("gen_named: unknown family '" + family + "'");
}

SymMatrix laplacian(const Graph& g) {
  SymMatrix L(g.size());
  for (const auto& e : g.edges()) {
    L.set(e.i, e.j, -e.w);
    L.add(e.i, e.i, e.w);
    L.add(e.j, e.j, e.w);
  }
  return L;
}

SymMatrix metropolis_weights(const Graph& g) {
  const auto d = g.degrees();
  SymMatrix W(g.size());
  for (const auto& e : g.edges()) W.set(e.i, e.j, 1.0 / std::max(d[e.i], d[e.j]));
  for (int i = 0; i < g.size(); ++i) {
    double off = 0.0;
    for (int j = 0; j < g.size(); ++j)
      if (j != i) off += W(i, j);
    W.set(i, i, 1.0 - off);
  }
  return W;
}

bool is_connected(const Graph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        count++;
        stack.push_back(u);
      }
  }
  return count == n;
}

Graph load_edgelist(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (n < 0) {
      if (first != "n") throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected header 'n <count>'");
      if (!(ls >> n) || n < 1)
        throw std::runtime_error("edge list line " + std::to_string(lineno) + ": bad vertex count");
      continue;
    }
    Edge e;
    try {
      e.i = std::stoi(first);
    } catch (const std::exception&) {
      throw std::runtime_error("edge list line " + std::to_string(lineno) + ": bad vertex index");
    }
    if (!(ls >> e.j >> e.w))
      throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected 'i j w'");
    std::string extra;
    if (ls >> extra) throw std::runtime_error("edge list line " + std::to_string(lineno) + ": trailing tokens");
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw std::runtime_error("edge list line " + std::to_string(lineno) + ": index out of range");
    if (e.i == e.j) throw std::runtime_error("edge list line " + std::to_string(lineno) + ": self-loop");
    edges.push_back(e);
  }
  if (n < 0) throw std::runtime_error("edge list: missing 'n <count>' header");
  try {
    return Graph(n, std::move(edges));
  } catch (const std::exception& ex) {
    throw std::runtime_error(std::string("edge list: ") + ex.what());
  }
}

std::string save_edgelist(const Graph& g) {
  std::string out = "n " + std::to_string(g.size()) + "\n";
  char buf[96];
  for (const auto& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.i, e.j, e.w);
    out += buf;
  }
  return out;
}

Graph load_edgelist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_edgelist(ss.str());
}

}  // namespace consensus
