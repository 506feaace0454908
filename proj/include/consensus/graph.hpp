#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "consensus/matrix.hpp"

namespace consensus {

struct Edge {
  int i = 0;
  int j = 0;
  double w = 1.0;
};

inline bool operator==(const Edge& a, const Edge& b) {
  return a.i == b.i && a.j == b.j && a.w == b.w;
}

/// Undirected weighted graph. Vertices are 0-indexed. Each unordered pair is
/// stored once in canonical form (i < j, lexicographically sorted); no
/// self-loops, no duplicates, strictly positive weights.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Weighted degrees d_i = sum_j a_ij.
  std::vector<double> degrees() const;
  double max_degree() const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// Parameters for the random/structured families. Unused fields are ignored.
struct GenParams {
  int part_p = 0;          // complete_bipartite: size of the first part
  int part_q = 0;          // complete_bipartite: size of the second part
  int ring_k = 4;          // watts_strogatz: ring degree (even)
  double rewire_p = 0.3;   // watts_strogatz: rewiring probability
  int clique_m0 = 3;       // barabasi_albert: initial clique size
  int attach_m = 2;        // barabasi_albert: attachments per new node
  std::optional<uint64_t> seed;  // required for the random families
};

Graph make_path(int n);
Graph make_cycle(int n);
Graph make_star(int n);
Graph make_complete(int n);
Graph make_complete_bipartite(int p, int q);
Graph make_watts_strogatz(int n, int k, double p, uint64_t seed);
Graph make_barabasi_albert(int n, int m0, int m, uint64_t seed);

/// Family-tag dispatch used by the CLI. Tags: path, cycle, star, complete,
/// complete_bipartite (alias bipartite), watts_strogatz (alias ws),
/// barabasi_albert (alias ba). Random families are regenerated until
/// connected (at most 100 attempts) and are deterministic given the seed.
Graph gen_named(const std::string& family, int n, const GenParams& params = {});

/// L = D - A. Rows sum to zero, diagonal holds the weighted degrees.
SymMatrix laplacian(const Graph& g);

/// Metropolis-Hastings weights: w_ij = 1/max(d_i, d_j) on edges,
/// w_ii = 1 - sum of the row's off-diagonal weights. Row-stochastic,
/// symmetric. Intended for unweighted graphs (uses degrees only).
SymMatrix metropolis_weights(const Graph& g);

bool is_connected(const Graph& g);

/// Edge-list text format: header "n <count>", then one "i j w" line per
/// edge, '#' starts a comment. Round trip: load(save(g)) == g.
Graph load_edgelist(const std::string& text);
std::string save_edgelist(const Graph& g);
Graph load_edgelist_file(const std::string& path);

}  // namespace consensus
