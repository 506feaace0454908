#include "consensus/graph.hpp"

#include <cmath>
#include <set>

#include "consensus/rng.hpp"
#include "doctest.h"

using namespace consensus;

TEST_CASE("structured families have the expected shape") {
  const Graph cycle = make_cycle(8);
  CHECK(cycle.edges().size() == 8);
  for (double d : cycle.degrees()) CHECK(d == doctest::Approx(2.0));

  const Graph star = make_star(8);
  auto sd = star.degrees();
  CHECK(sd[0] == doctest::Approx(7.0));
  for (int i = 1; i < 8; ++i) CHECK(sd[i] == doctest::Approx(1.0));

  const Graph b = make_complete_bipartite(3, 5);
  CHECK(b.edges().size() == 15);
  auto bd = b.degrees();
  for (int i = 0; i < 3; ++i) CHECK(bd[i] == doctest::Approx(5.0));
  for (int i = 3; i < 8; ++i) CHECK(bd[i] == doctest::Approx(3.0));
}

TEST_CASE("graph invariants are enforced") {
  CHECK_THROWS(Graph(3, {{0, 0, 1.0}}));             // self-loop
  CHECK_THROWS(Graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}));  // duplicate unordered pair
  CHECK_THROWS(Graph(3, {{0, 3, 1.0}}));             // index range
  CHECK_THROWS(Graph(3, {{0, 1, 0.0}}));             // nonpositive weight
  CHECK_THROWS(Graph(3, {{0, 1, -1.0}}));
}

TEST_CASE("laplacian of small graphs") {
  const SymMatrix L2 = laplacian(make_path(2));
  CHECK(L2(0, 0) == doctest::Approx(1.0));
  CHECK(L2(0, 1) == doctest::Approx(-1.0));
  CHECK(L2(1, 1) == doctest::Approx(1.0));

  const SymMatrix Lc = laplacian(make_cycle(8));
  for (int i = 0; i < 8; ++i) {
    CHECK(Lc(i, i) == doctest::Approx(2.0));
    double row = 0.0;
    for (int j = 0; j < 8; ++j) row += Lc(i, j);
    CHECK(std::abs(row) <= 1e-12);
  }

  const SymMatrix Ls = laplacian(make_star(8));
  CHECK(Ls(0, 0) == doctest::Approx(7.0));
  for (int i = 1; i < 8; ++i) CHECK(Ls(i, i) == doctest::Approx(1.0));
}

TEST_CASE("metropolis weights") {
  const SymMatrix W2 = metropolis_weights(make_path(2));
  CHECK(W2(0, 0) == doctest::Approx(0.0));
  CHECK(W2(0, 1) == doctest::Approx(1.0));

  const SymMatrix Ws = metropolis_weights(make_star(8));
  CHECK(Ws(0, 0) == doctest::Approx(0.0));
  for (int i = 1; i < 8; ++i) CHECK(Ws(0, i) == doctest::Approx(1.0 / 7.0));

  // Row-stochastic for every generated graph.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const Graph g = make_watts_strogatz(20, 4, 0.3, rng());
    const SymMatrix W = metropolis_weights(g);
    for (int i = 0; i < g.size(); ++i) {
      double row = 0.0;
      for (int j = 0; j < g.size(); ++j) {
        row += W(i, j);
        CHECK(W(i, j) >= 0.0);
        CHECK(W(i, j) <= 1.0);
      }
      CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("uniform-degree graphs satisfy W == I - L/c") {
  // cycle: all max(d_i, d_j) = 2; bipartite 3+5: all max = 5
  const Graph cy = make_cycle(8);
  const SymMatrix W = metropolis_weights(cy);
  const SymMatrix L = laplacian(cy);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(W(i, j) == doctest::Approx((i == j ? 1.0 : 0.0) - L(i, j) / 2.0));

  const Graph b = make_complete_bipartite(3, 5);
  const SymMatrix Wb = metropolis_weights(b);
  const SymMatrix Lb = laplacian(b);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(Wb(i, j) == doctest::Approx((i == j ? 1.0 : 0.0) - Lb(i, j) / 5.0));
}

TEST_CASE("connectivity") {
  CHECK(is_connected(make_cycle(8)));
  CHECK_FALSE(is_connected(Graph(3, {{0, 1, 1.0}})));
  CHECK(is_connected(Graph(1, {})));
}

TEST_CASE("edge list round trip") {
  const Graph p2 = load_edgelist("n 2\n0 1 1.0\n");
  CHECK(p2 == make_path(2));

  std::mt19937_64 rng(11);
  const Graph g = make_barabasi_albert(30, 3, 2, rng());
  CHECK(load_edgelist(save_edgelist(g)) == g);

  // Comments and blank lines are fine.
  CHECK(load_edgelist("# header comment\nn 2\n\n0 1 2.5 # weight\n").edges()[0].w == 2.5);

  CHECK_THROWS_WITH_AS(load_edgelist("n 2\n0 0 1.0\n"), doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS(load_edgelist("n 2\n0 5 1.0\n"));
  CHECK_THROWS(load_edgelist("0 1 1.0\n"));          // missing header
  CHECK_THROWS(load_edgelist("n 3\n0 1 1.0\n1 0 1.0\n"));  // duplicate
  CHECK_THROWS(load_edgelist("n 2\nx y z\n"));
}

TEST_CASE("random generators are deterministic and connected") {
  const Graph a = make_watts_strogatz(24, 4, 0.3, 7);
  const Graph b = make_watts_strogatz(24, 4, 0.3, 7);
  CHECK(a == b);
  CHECK(is_connected(a));
  CHECK(save_edgelist(a) == save_edgelist(b));
  CHECK_FALSE(a == make_watts_strogatz(24, 4, 0.3, 8));

  const Graph ba1 = make_barabasi_albert(24, 3, 2, 7);
  CHECK(ba1 == make_barabasi_albert(24, 3, 2, 7));
  CHECK(is_connected(ba1));

  CHECK_THROWS(make_watts_strogatz(8, 8, 0.3, 1));   // k >= n
  CHECK_THROWS(make_watts_strogatz(8, 3, 0.3, 1));   // odd k
  CHECK_THROWS(make_barabasi_albert(8, 3, 4, 1));    // m > m0
}

TEST_CASE("gen_named dispatch") {
  GenParams gp;
  gp.part_p = 3;
  gp.part_q = 5;
  CHECK(gen_named("complete_bipartite", 8, gp) == make_complete_bipartite(3, 5));
  CHECK(gen_named("cycle", 8) == make_cycle(8));
  CHECK_THROWS(gen_named("mystery", 8));
  CHECK_THROWS(gen_named("ws", 8));  // missing seed
}
