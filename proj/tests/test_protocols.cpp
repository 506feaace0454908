#include "consensus/protocols.hpp"

#include <cmath>

#include "consensus/graph.hpp"
#include "consensus/rng.hpp"
#include "doctest.h"

using namespace consensus;

TEST_CASE("best constant gain") {
  auto [p, g] = params_and_rate_bc(1.0, 8.0);
  CHECK(p.epsilon == doctest::Approx(2.0 / 9.0));
  CHECK(g == doctest::Approx(7.0 / 9.0));
  CHECK(std::abs(g - 0.7778) < 1e-4);
  CHECK(params_and_rate_bc(3.0, 8.0).second == doctest::Approx(5.0 / 11.0));
  CHECK(params_and_rate_bc(2.0, 2.0).second == doctest::Approx(0.0));
  CHECK_THROWS(params_and_rate_bc(0.0, 1.0));
}

TEST_CASE("periodic graph-filter gains") {
  auto [p, g] = params_and_rate_gf(1.0, 8.0);
  CHECK(std::abs(g - 0.5994) < 5e-4);
  for (double e : p.gains) CHECK(e > 0.0);
  CHECK(p.gains[1] == doctest::Approx(2.0 / 9.0));  // cos(pi/2) = 0

  CHECK(std::abs(params_and_rate_gf(2.0 - std::sqrt(2.0), 4.0).second - 0.5610) < 5e-4);
  CHECK(std::abs(params_and_rate_gf(0.2201, 1.0).second - 0.4549) < 5e-4);

  auto [pe, ge] = params_and_rate_gf(2.0, 2.0);
  CHECK(ge == 0.0);
  for (double e : pe.gains) CHECK(e == doctest::Approx(0.5));
}

TEST_CASE("one-tap memory on the weight matrix") {
  auto [p, r] = params_and_rate_mem(0.9239);
  CHECK(std::abs(r.gamma - 0.6682) < 1e-4);
  CHECK_FALSE(r.divergent);
  CHECK(p.alpha < 0.0);  // heavy-ball style negative mixing

  CHECK(params_and_rate_mem(1.0).second.divergent);
  CHECK(params_and_rate_mem(0.0).second.gamma == doctest::Approx(0.0));
  CHECK_THROWS(params_and_rate_mem(1.2));
}

TEST_CASE("general one-tap memory matches Mem") {
  auto [p, r] = params_and_rate_gmem(0.9239);
  CHECK(std::abs(r.gamma - 0.6682) < 1e-4);
  CHECK(p.beta1 == doctest::Approx(-1.0));
  CHECK(p.beta3 == doctest::Approx(2.0));

  CHECK(std::abs(params_and_rate_gmem(0.8571).second.gamma - 0.5657) < 1e-4);
  CHECK(params_and_rate_gmem(0.0).second.gamma == doctest::Approx(0.0));

  std::mt19937_64 rng(31);
  for (int t = 0; t < 1000; ++t) {
    const double rho = uniform_real(rng, 1e-6, 0.999999);
    const double eps = uniform_real(rng, 0.25, 4.0);
    CHECK(std::abs(params_and_rate_gmem(rho, eps).second.gamma -
                   params_and_rate_mem(rho).second.gamma) <= 1e-12);
  }
  CHECK_THROWS(params_and_rate_gmem(0.5, 0.0));
}

TEST_CASE("FIR memory scheme") {
  auto [p, g] = params_and_rate_firmem(1.0, 8.0);
  CHECK(g == doctest::Approx(7.0 / 11.0));
  CHECK(params_and_rate_firmem(3.0, 8.0).second == doctest::Approx(5.0 / 17.0));
  CHECK(params_and_rate_firmem(2.0, 2.0).second == doctest::Approx(0.0));

  // The tuned taps realize the claimed rate: per-mode quadratic
  // z^2 - (1 - b0 l) z + b1 l has max root exactly gamma at both ends and
  // below it inside the interval.
  auto mode_radius = [&](double b0, double b1, double l) {
    return max_modulus_root(Polynomial({b1 * l, -(1.0 - b0 * l), 1.0}));
  };
  CHECK(mode_radius(p.beta0, p.beta1, 1.0) == doctest::Approx(g).epsilon(1e-12));
  CHECK(mode_radius(p.beta0, p.beta1, 8.0) == doctest::Approx(g).epsilon(1e-9));
  for (int i = 1; i < 20; ++i) {
    const double l = 1.0 + 7.0 * i / 20.0;
    CHECK(mode_radius(p.beta0, p.beta1, l) <= g + 1e-12);
  }
}

TEST_CASE("optimal memory protocols") {
  auto [p1, g1] = optmem_m1(1.0, 9.0);
  CHECK(g1 == doctest::Approx(0.5));
  CHECK(p1.alpha == doctest::Approx(0.25));
  CHECK(p1.theta[0] == doctest::Approx(0.25));
  CHECK(p1.theta[1] == doctest::Approx(-0.25));

  CHECK(std::abs(optmem_m1(1.0, 8.0).second - 0.4776) < 1e-4);
  CHECK(std::abs(optmem_m1(2.0 - std::sqrt(2.0), 4.0).second - 0.4465) < 1e-4);

  auto [p2, g2] = optmem_m2(1.0, 9.0);
  CHECK(g2 == doctest::Approx(g1));
  REQUIRE(p2.theta.size() == 3);
  CHECK(p2.theta[0] == doctest::Approx(0.25));
  CHECK(p2.theta[1] == doctest::Approx(-0.25));
  CHECK(p2.theta[2] == doctest::Approx(0.0));

  auto [pw, gw] = optmem_worstcase(1.0, 9.0, 5);
  CHECK(gw == doctest::Approx(0.5));
  REQUIRE(pw.theta.size() == 6);
  CHECK(pw.theta[0] == doctest::Approx(0.25));
  CHECK(pw.theta[1] == doctest::Approx(-0.25));
  for (int m = 2; m <= 5; ++m) CHECK(pw.theta[m] == 0.0);

  CHECK(optmem_worstcase(2.0, 2.0, 3).second == doctest::Approx(0.0));
  auto [pa, ga] = optmem_worstcase(1.0, 8.0, 1);
  auto [pb, gb] = optmem_m1(1.0, 8.0);
  CHECK(ga == doctest::Approx(gb).epsilon(1e-15));
  CHECK(pa.alpha == doctest::Approx(pb.alpha).epsilon(1e-15));
  CHECK_THROWS(optmem_worstcase(1.0, 9.0, 0));
}

TEST_CASE("rate via Theorem 1 and Theorem 2") {
  const Spectrum star8 = sym_eigenvalues(laplacian(make_star(8)));

  // Memoryless best-constant parameters on the star.
  CHECK(rate_theorem1(star8, MemoryParams(2.0 / 9.0, {0.0})) == doctest::Approx(7.0 / 9.0).epsilon(1e-10));

  // The closed-form optimum achieves its own rate through the root path.
  auto [p1, g1] = optmem_m1(1.0, 8.0);
  CHECK(std::abs(rate_theorem1(star8, p1) - g1) <= 1e-9);
  CHECK(std::abs(rate_theorem2(1.0, 8.0, p1) - g1) <= 1e-9);

  // Theorem 2 equals Theorem 1 for M <= 2 on the full spectrum.
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    const int M = uniform_int(rng, 0, 2);
    std::vector<double> theta(M + 1, 0.0);
    double sum = 0.0;
    for (int m = 0; m < M; ++m) {
      theta[m] = uniform_real(rng, -0.5, 0.5);
      sum += theta[m];
    }
    theta[M] = -sum;
    const MemoryParams p(uniform_real(rng, -0.2, 1.0), theta);
    CHECK(std::abs(rate_theorem1(star8, p) - rate_theorem2(1.0, 8.0, p)) <= 1e-9);
  }

  CHECK_THROWS(rate_theorem2(1.0, 8.0, MemoryParams(0.2, {0.1, -0.1, 0.0, 0.0})));  // M = 3
}

TEST_CASE("corollary 2 gap") {
  const Corollary2Result on_line = corollary2_gap(0.5, 1.5);
  CHECK(std::abs(on_line.gap) <= 1e-12);

  const Corollary2Result off = corollary2_gap(0.2, 1.0);
  CHECK(off.gap > 1e-3);

  CHECK(corollary2_gap(0.5, 2.5).divergent);  // rho_s(I-L) >= 1

  std::mt19937_64 rng(33);
  for (int t = 0; t < 1000; ++t) {
    const double l2 = uniform_real(rng, 0.01, 1.98);
    const double lN = uniform_real(rng, l2, 1.99);
    CHECK(corollary2_gap(l2, lN).gap >= -1e-12);
  }
}

TEST_CASE("remark 3 ratio") {
  const double ratio = remark3_ratio(1.0, 8.0);
  CHECK(ratio == doctest::Approx((7.0 / 11.0) / optmem_m1(1.0, 8.0).second).epsilon(1e-12));
  CHECK(std::abs(ratio - 1.332) < 2e-3);
  CHECK(remark3_ratio(3.0, 3.0) == doctest::Approx(1.0));

  std::mt19937_64 rng(34);
  for (int t = 0; t < 1000; ++t) {
    const double l2 = uniform_real(rng, 0.01, 5.0);
    const double lN = l2 * uniform_real(rng, 1.0001, 40.0);
    CHECK(remark3_ratio(l2, lN) > 1.0);
  }
}

TEST_CASE("rate ordering chain") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 1000; ++t) {
    const double l2 = uniform_real(rng, 0.01, 5.0);
    const double lN = l2 * uniform_real(rng, 1.0001, 60.0);
    const double bc = params_and_rate_bc(l2, lN).second;
    const double gf = params_and_rate_gf(l2, lN).second;
    const double fir = params_and_rate_firmem(l2, lN).second;
    const double opt = optmem_m1(l2, lN).second;
    CHECK(opt <= gf + 1e-12);
    CHECK(gf <= bc + 1e-12);
    CHECK(opt <= fir + 1e-12);
    CHECK(fir <= bc + 1e-12);
  }
}

TEST_CASE("rate report") {
  const RateReport path = table2_report(make_path(8));
  CHECK(std::abs(path.mem.rate.gamma - 0.6682) < 1e-4);
  CHECK(std::abs(path.optmem.rate.gamma - 0.6682) < 1e-4);
  CHECK(std::abs(path.gmem.rate.gamma - path.mem.rate.gamma) <= 1e-12);

  const RateReport cyc = table2_report(make_cycle(8));
  CHECK(cyc.mem.rate.divergent);
  CHECK(cyc.gmem.rate.divergent);
  CHECK_FALSE(cyc.optmem.rate.divergent);

  CHECK_THROWS(table2_report(Graph(4, {{0, 1, 1.0}, {2, 3, 1.0}})));

  const RateReport g5 = table2_report_from_spectra(0.2201, 0.7211);
  CHECK(std::abs(g5.bc.rate.gamma - 0.6392) < 1e-4);
  CHECK(std::abs(g5.optmem.rate.gamma - 0.3613) < 1e-4);
}
