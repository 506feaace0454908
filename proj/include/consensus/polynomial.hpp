#pragma once

#include <span>
#include <vector>

#include "consensus/matrix.hpp"
#include "consensus/spectral.hpp"

namespace consensus {

/// Real-coefficient univariate polynomial. Coefficients are stored in
/// ascending degree order (coeffs()[k] multiplies z^k); trailing zeros are
/// trimmed on construction so the leading coefficient of a nonzero
/// polynomial is nonzero.
class Polynomial {
 public:
  Polynomial() : c_{0.0} {}
  explicit Polynomial(std::vector<double> ascending);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  double operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0.0; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }

  double eval(double x) const;
  cdouble eval(cdouble z) const;

  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;

  bool operator==(const Polynomial& other) const { return c_ == other.c_; }

 private:
  std::vector<double> c_;
};

/// Control parameters of the M-tap memory protocol: gain alpha and memory
/// weights theta = [theta_0, ..., theta_M]. The consensus condition
/// sum(theta) == 0 is enforced within 1e-12 at construction.
struct MemoryParams {
  double alpha = 0.0;
  std::vector<double> theta;

  MemoryParams(double a, std::vector<double> th);
  int taps() const { return static_cast<int>(theta.size()) - 1; }
};

/// h_1(z) = z^M - theta_0 z^{M-1} - (theta_0+theta_1) z^{M-2} - ...
/// (degree M; the constant polynomial 1 when M = 0).
Polynomial build_h1(const MemoryParams& p);

/// h_i(z) = z^{M+1} - (1 + theta_0 - alpha*lambda) z^M - sum_m theta_m z^{M-m}.
Polynomial build_hi(const MemoryParams& p, double lambda);

/// All complex roots with multiplicity, via the companion matrix. Exact zero
/// constant terms are factored out first, and quadratics resolve by the
/// discriminant formula inside the QR deflation, so the double roots that
/// arise at the rate-optimal parameters come out exact.
std::vector<cdouble> roots(const Polynomial& q);

/// Stability radius r_bar: the maximum modulus among the roots.
double max_modulus_root(const Polynomial& q);

/// True iff every root is strictly inside the unit circle.
bool is_schur_stable(const Polynomial& q);

/// The N(M+1)-dimensional one-step matrix of the stacked memory system:
/// first block row [(1+theta_0)I - alpha*L, theta_1 I, ..., theta_M I],
/// identity blocks on the block subdiagonal, zero elsewhere.
struct AugmentedSystem {
  Matrix phi;
  int n_agents = 0;
  int taps = 0;
};

AugmentedSystem build_phi(const SymMatrix& L, const MemoryParams& p);

/// Convergence rate gamma_M: second largest eigenvalue modulus of phi
/// (one copy of the eigenvalue 1 removed). Dense eigenvalue oracle path.
double rho_s_phi(const AugmentedSystem& sys);

/// Max relative mismatch of det(zI - phi) against (z-1) * prod_i h_i(z)
/// over the given sample points. The determinant side uses complex LU with
/// partial pivoting. Throws if a sample lands on an eigenvalue (both sides
/// vanish); resample in that case.
double verify_charpoly_factorization(const AugmentedSystem& sys, const MemoryParams& p,
                                     const Spectrum& spectrum, std::span<const cdouble> z_samples);

/// Left eigenvector phi_1 of the augmented matrix at eigenvalue 1, solved
/// from the block chain equations and normalized so phi_1 . ones == 1.
/// Throws when the normalizing sum is within 1e-12 of zero.
std::vector<double> consensus_left_eigenvector(const MemoryParams& p, const SymMatrix& L);

}  // namespace consensus
