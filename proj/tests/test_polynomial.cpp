#include "consensus/polynomial.hpp"

#include <cmath>

#include "consensus/graph.hpp"
#include "consensus/rng.hpp"
#include "doctest.h"

using namespace consensus;

namespace {

MemoryParams random_zero_sum(std::mt19937_64& rng, int M, double alpha_lo = -0.3, double alpha_hi = 1.5) {
  std::vector<double> theta(M + 1, 0.0);
  double sum = 0.0;
  for (int m = 0; m < M; ++m) {
    theta[m] = uniform_real(rng, -0.5, 0.5);
    sum += theta[m];
  }
  theta[M] = -sum;
  return MemoryParams(uniform_real(rng, alpha_lo, alpha_hi), std::move(theta));
}

bool coeff_close(const Polynomial& a, const Polynomial& b, double tol = 1e-12) {
  const int d = std::max(a.degree(), b.degree());
  for (int k = 0; k <= d; ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("memory params validate the zero-sum condition") {
  CHECK_NOTHROW(MemoryParams(0.3, {0.25, -0.25}));
  CHECK_THROWS(MemoryParams(0.3, {0.25, -0.2}));
  CHECK_THROWS(MemoryParams(0.3, {}));
}

TEST_CASE("build_h1") {
  CHECK(coeff_close(build_h1(MemoryParams(0.1, {0.25, -0.25})), Polynomial({-0.25, 1.0})));
  CHECK(coeff_close(build_h1(MemoryParams(0.1, {0.25, -0.25, 0.0})), Polynomial({0.0, -0.25, 1.0})));
  CHECK(build_h1(MemoryParams(0.1, {0.0})).degree() == 0);  // M = 0: the constant 1
  CHECK(build_h1(MemoryParams(0.1, {0.0}))[0] == 1.0);

  // (z-1) h1(z) == z^{M+1} - (1+theta0) z^M - sum theta_m z^{M-m}
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const int M = uniform_int(rng, 1, 4);
    const MemoryParams p = random_zero_sum(rng, M);
    std::vector<double> want(M + 2, 0.0);
    want[M + 1] = 1.0;
    want[M] = -(1.0 + p.theta[0]);
    for (int m = 1; m <= M; ++m) want[M - m] = -p.theta[m];
    CHECK(coeff_close(Polynomial({-1.0, 1.0}) * build_h1(p), Polynomial(want)));
  }
}

TEST_CASE("build_hi") {
  const MemoryParams p(0.3, {0.25, -0.25});
  CHECK(coeff_close(build_hi(p, 2.0), Polynomial({0.25, -0.65, 1.0})));
  CHECK(coeff_close(build_hi(p, 0.0), Polynomial({-1.0, 1.0}) * build_h1(p)));
  CHECK(coeff_close(build_hi(MemoryParams(0.4, {0.0}), 2.0), Polynomial({-(1.0 - 0.8), 1.0})));
}

TEST_CASE("roots and max modulus") {
  auto r1 = roots(Polynomial({-0.5, 1.0}));
  REQUIRE(r1.size() == 1);
  CHECK(std::abs(r1[0] - cdouble(0.5, 0.0)) < 1e-14);

  auto r2 = roots(Polynomial({0.25, -0.65, 1.0}));
  REQUIRE(r2.size() == 2);
  CHECK(std::abs(r2[0]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r2[1]) == doctest::Approx(0.5).epsilon(1e-12));

  auto r3 = roots(Polynomial({-1.0, 0.0, 1.0}));
  REQUIRE(r3.size() == 2);
  CHECK(std::max(r3[0].real(), r3[1].real()) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::min(r3[0].real(), r3[1].real()) == doctest::Approx(-1.0).epsilon(1e-13));

  CHECK(max_modulus_root(Polynomial({-0.25, 1.0})) == doctest::Approx(0.25).epsilon(1e-14));
  // Double root at -0.5 resolves exactly through the quadratic branch.
  CHECK(max_modulus_root(Polynomial({0.25, 1.0, 1.0})) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS(roots(Polynomial({1.0})));
}

TEST_CASE("root residuals stay small") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const int d = uniform_int(rng, 1, 5);
    std::vector<double> c(d + 1);
    for (double& v : c) v = uniform_real(rng, -2.0, 2.0);
    if (std::abs(c[d]) < 0.1) c[d] = 0.5;
    const Polynomial q(c);
    double cmax = 0.0;
    for (double v : q.coeffs()) cmax = std::max(cmax, std::abs(v));
    for (const auto& r : roots(q)) {
      const double allowed = 1e-8 * cmax * std::pow(std::max(1.0, std::abs(r)), q.degree());
      CHECK(std::abs(q.eval(r)) <= allowed);
    }
  }
}

TEST_CASE("schur stability") {
  CHECK(is_schur_stable(Polynomial({-0.5, 1.0})));
  CHECK_FALSE(is_schur_stable(Polynomial({-1.0, 1.0})));  // boundary excluded
  CHECK(is_schur_stable(Polynomial({0.25, 1.0, 1.0})));
}

TEST_CASE("build_phi layout") {
  // N=2 path, M=0, alpha=0.5: Phi = I - 0.5 L.
  const SymMatrix L2 = laplacian(make_path(2));
  const AugmentedSystem s0 = build_phi(L2, MemoryParams(0.5, {0.0}));
  CHECK(s0.phi(0, 0) == doctest::Approx(0.5));
  CHECK(s0.phi(0, 1) == doctest::Approx(0.5));
  CHECK(s0.phi(1, 0) == doctest::Approx(0.5));
  CHECK(s0.phi(1, 1) == doctest::Approx(0.5));

  // Example block layout: star n=9, M=3.
  const MemoryParams p(0.258738, {0.293692, -0.301255, 0.0, 0.007563});
  const SymMatrix L = laplacian(make_star(9));
  const AugmentedSystem sys = build_phi(L, p);
  const int N = 9;
  CHECK(sys.phi.rows() == 36);
  CHECK(sys.phi(0, 0) == doctest::Approx(1.293692 - 0.258738 * 8.0));  // hub degree 8
  CHECK(sys.phi(1, 1) == doctest::Approx(1.293692 - 0.258738 * 1.0));
  CHECK(sys.phi(0, 1) == doctest::Approx(-0.258738 * -1.0));
  CHECK(sys.phi(2, N + 2) == doctest::Approx(-0.301255));
  CHECK(sys.phi(2, 2 * N + 2) == doctest::Approx(0.0));
  CHECK(sys.phi(2, 3 * N + 2) == doctest::Approx(0.007563));
  for (int m = 1; m <= 3; ++m)
    for (int i = 0; i < N; ++i) CHECK(sys.phi(m * N + i, (m - 1) * N + i) == doctest::Approx(1.0));

  // Right eigenvector at 1: Phi * ones == ones whenever sum(theta) = 0.
  std::vector<double> ones(36, 1.0);
  for (double v : sys.phi.apply(ones)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rho_s_phi") {
  // Star n=9 with the optimal M=1 parameters: all transient modes at 0.5.
  const SymMatrix L = laplacian(make_star(9));
  const AugmentedSystem sys = build_phi(L, MemoryParams(0.25, {0.25, -0.25}));
  CHECK(std::abs(rho_s_phi(sys) - 0.5) < 1e-6);

  // Memoryless best-constant gain: rho_s = (lN - l2)/(lN + l2).
  const SymMatrix L8 = laplacian(make_star(8));
  const AugmentedSystem bc = build_phi(L8, MemoryParams(2.0 / 9.0, {0.0}));
  CHECK(rho_s_phi(bc) == doctest::Approx(7.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("characteristic polynomial factorization") {
  std::mt19937_64 rng(9);
  const SymMatrix L = laplacian(make_path(2));
  const MemoryParams p(0.35, {0.2, -0.2});
  const AugmentedSystem sys = build_phi(L, p);
  const Spectrum spec = sym_eigenvalues(L);
  std::vector<cdouble> samples;
  for (int s = 0; s < 10; ++s) {
    const double phi = uniform_real(rng, 0.0, 6.28);
    samples.emplace_back(2.0 * std::cos(phi), 2.0 * std::sin(phi));
  }
  CHECK(verify_charpoly_factorization(sys, p, spec, samples) < 1e-9);

  // Far from the spectrum both sides track the monic leading term.
  std::vector<cdouble> big{cdouble(10.0, 0.0)};
  CHECK(verify_charpoly_factorization(sys, p, spec, big) < 1e-12);
}

TEST_CASE("consensus left eigenvector") {
  const SymMatrix L = laplacian(make_cycle(6));
  const int N = 6;

  // M = 0: the uniform average.
  const auto phi0 = consensus_left_eigenvector(MemoryParams(0.4, {0.0}), L);
  for (double v : phi0) CHECK(v == doctest::Approx(1.0 / N).epsilon(1e-14));

  // M = 1, theta0 = 0.25: blocks 4/(3N) and -1/(3N).
  const auto phi1 = consensus_left_eigenvector(MemoryParams(0.3, {0.25, -0.25}), L);
  for (int i = 0; i < N; ++i) {
    CHECK(phi1[i] == doctest::Approx(4.0 / (3.0 * N)).epsilon(1e-13));
    CHECK(phi1[N + i] == doctest::Approx(-1.0 / (3.0 * N)).epsilon(1e-13));
  }

  // Defining equations hold for random parameters.
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    const int M = uniform_int(rng, 0, 3);
    std::vector<double> theta(M + 1, 0.0);
    double sum = 0.0;
    for (int m = 0; m < M; ++m) {
      theta[m] = uniform_real(rng, -0.4, 0.4);
      sum += theta[m];
    }
    theta[M] = -sum;
    const MemoryParams p(uniform_real(rng, 0.0, 1.0), theta);
    const auto phi = consensus_left_eigenvector(p, L);
    const AugmentedSystem sys = build_phi(L, p);
    const int dim = sys.phi.rows();
    double ones_dot = 0.0;
    for (double v : phi) ones_dot += v;
    CHECK(ones_dot == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j < dim; ++j) {
      double col = 0.0;
      for (int i = 0; i < dim; ++i) col += phi[i] * sys.phi(i, j);
      CHECK(std::abs(col - phi[j]) <= 1e-9);
    }
  }

  // Degenerate normalization: theta0 = 1 makes the block sum vanish (M=1).
  CHECK_THROWS(consensus_left_eigenvector(MemoryParams(0.3, {1.0, -1.0}), L));

  // phi1 . X(0) recovers the initial average for a stacked start.
  const MemoryParams p(0.3, {0.25, -0.25});
  const auto phi = consensus_left_eigenvector(p, L);
  std::mt19937_64 rng2(11);
  std::vector<double> x0(N);
  double xbar = 0.0;
  for (double& v : x0) {
    v = uniform_real(rng2, 0.0, 1.0);
    xbar += v;
  }
  xbar /= N;
  double dot = 0.0;
  for (int m = 0; m <= 1; ++m)
    for (int i = 0; i < N; ++i) dot += phi[m * N + i] * x0[i];
  CHECK(dot == doctest::Approx(xbar).epsilon(1e-13));
}

TEST_CASE("dimension cap") {
  const SymMatrix L = laplacian(make_cycle(2000));
  CHECK_THROWS(build_phi(L, MemoryParams(0.1, {0.0, 0.0, 0.0})));  // 2000*3 > cap
}
