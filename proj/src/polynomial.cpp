#include "consensus/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace consensus {

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) {
  if (c_.empty()) c_.push_back(0.0);
  for (double v : c_)
    if (!std::isfinite(v)) throw std::invalid_argument("Polynomial: non-finite coefficient");
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cdouble Polynomial::eval(cdouble z) const {
  cdouble acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<double> r(c_.size() + other.c_.size() - 1, 0.0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < other.c_.size(); ++j) r[i + j] += c_[i] * other.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  std::vector<double> r(std::max(c_.size(), other.c_.size()), 0.0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[static_cast<int>(i)] - other[static_cast<int>(i)];
  return Polynomial(std::move(r));
}

MemoryParams::MemoryParams(double a, std::vector<double> th) : alpha(a), theta(std::move(th)) {
  if (theta.empty()) throw std::invalid_argument("MemoryParams: theta must have at least one entry");
  double sum = std::accumulate(theta.begin(), theta.end(), 0.0);
  if (std::abs(sum) > 1e-12)
    throw std::invalid_argument("MemoryParams: sum of theta must be zero (consensus condition)");
  if (!std::isfinite(alpha)) throw std::invalid_argument("MemoryParams: alpha must be finite");
}

Polynomial build_h1(const MemoryParams& p) {
  const int M = p.taps();
  // Ascending: coefficient of z^{M-1-k} is -sum_{m<=k} theta_m.
  std::vector<double> c(M + 1, 0.0);
  c[M] = 1.0;
  double partial = 0.0;
  for (int k = 0; k < M; ++k) {
    partial += p.theta[k];
    c[M - 1 - k] = -partial;
  }
  return Polynomial(std::move(c));
}

Polynomial build_hi(const MemoryParams& p, double lambda) {
  const int M = p.taps();
  std::vector<double> c(M + 2, 0.0);
  c[M + 1] = 1.0;
  c[M] = -(1.0 + p.theta[0] - p.alpha * lambda);
  for (int m = 1; m <= M; ++m) c[M - m] = -p.theta[m];
  return Polynomial(std::move(c));
}

std::vector<cdouble> roots(const Polynomial& q) {
  if (q.degree() < 1) throw std::invalid_argument("roots: degree >= 1 required");
  std::vector<double> c = q.coeffs();
  std::vector<cdouble> out;
  // Exact zero constant terms factor out as exact zero roots.
  size_t shift = 0;
  while (shift + 1 < c.size() && c[shift] == 0.0) shift++;
  for (size_t k = 0; k < shift; ++k) out.emplace_back(0.0, 0.0);
  c.erase(c.begin(), c.begin() + shift);
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return out;
  if (d == 1) {
    out.emplace_back(-c[0] / c[1], 0.0);
    return out;
  }
  if (d == 2) {
    // Direct quadratic formula; a discriminant below the rounding floor of
    // b^2 - 4ac is a double root, which keeps the repeated roots at the
    // rate-optimal parameter points exact instead of split by sqrt(ulp).
    const double a = c[2], b = c[1], c0 = c[0];
    const double disc = b * b - 4.0 * a * c0;
    const double floor_ = 4.0 * std::numeric_limits<double>::epsilon() * (b * b + std::abs(4.0 * a * c0));
    if (std::abs(disc) <= floor_) {
      const double r = -b / (2.0 * a);
      out.emplace_back(r, 0.0);
      out.emplace_back(r, 0.0);
    } else if (disc > 0.0) {
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      out.emplace_back(q / a, 0.0);
      out.emplace_back(c0 / q, 0.0);
    } else {
      const double re = -b / (2.0 * a);
      const double im = std::sqrt(-disc) / (2.0 * a);
      out.emplace_back(re, im);
      out.emplace_back(re, -im);
    }
    return out;
  }
  Matrix comp(d, d);
  const double lead = c[d];
  for (int k = 0; k < d; ++k) comp(0, k) = -c[d - 1 - k] / lead;
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  auto eig = general_eigenvalues(comp);
  out.insert(out.end(), eig.begin(), eig.end());
  return out;
}

double max_modulus_root(const Polynomial& q) {
  double r = 0.0;
  for (const auto& z : roots(q)) r = std::max(r, std::abs(z));
  return r;
}

bool is_schur_stable(const Polynomial& q) { return max_modulus_root(q) < 1.0; }

AugmentedSystem build_phi(const SymMatrix& L, const MemoryParams& p) {
  const int N = L.size();
  const int M = p.taps();
  const long long dim = static_cast<long long>(N) * (M + 1);
  if (dim > 5000) throw std::invalid_argument("build_phi: dimension N(M+1) exceeds cap");
  AugmentedSystem sys;
  sys.n_agents = N;
  sys.taps = M;
  sys.phi = Matrix(static_cast<int>(dim), static_cast<int>(dim));
  Matrix& phi = sys.phi;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) phi(i, j) = -p.alpha * L(i, j);
    phi(i, i) += 1.0 + p.theta[0];
    for (int m = 1; m <= M; ++m) phi(i, m * N + i) = p.theta[m];
  }
  for (int m = 1; m <= M; ++m)
    for (int i = 0; i < N; ++i) phi(m * N + i, (m - 1) * N + i) = 1.0;
  return sys;
}

double rho_s_phi(const AugmentedSystem& sys) {
  auto eig = general_eigenvalues(sys.phi);
  int one_idx = -1;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < eig.size(); ++i) {
    double d = std::abs(eig[i] - cdouble(1.0, 0.0));
    if (d < best) {
      best = d;
      one_idx = static_cast<int>(i);
    }
  }
  if (one_idx < 0 || best > 1e-6)
    throw std::runtime_error("rho_s_phi: no eigenvalue at 1 (sum of theta nonzero or graph disconnected?)");
  double rho = 0.0;
  for (size_t i = 0; i < eig.size(); ++i)
    if (static_cast<int>(i) != one_idx) rho = std::max(rho, std::abs(eig[i]));
  return rho;
}

namespace {

// det(zI - A) for complex z via LU with partial pivoting.
cdouble shifted_determinant(const Matrix& a, cdouble z) {
  const int n = a.rows();
  std::vector<cdouble> lu(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) lu[static_cast<size_t>(i) * n + j] = (i == j ? z : 0.0) - a(i, j);
  cdouble det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu[static_cast<size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(lu[static_cast<size_t>(i) * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu[static_cast<size_t>(piv) * n + j], lu[static_cast<size_t>(k) * n + j]);
      det = -det;
    }
    const cdouble pivot = lu[static_cast<size_t>(k) * n + k];
    det *= pivot;
    for (int i = k + 1; i < n; ++i) {
      const cdouble f = lu[static_cast<size_t>(i) * n + k] / pivot;
      if (f == cdouble(0.0, 0.0)) continue;
      lu[static_cast<size_t>(i) * n + k] = f;
      for (int j = k + 1; j < n; ++j) lu[static_cast<size_t>(i) * n + j] -= f * lu[static_cast<size_t>(k) * n + j];
    }
  }
  return det;
}

}  // namespace

double verify_charpoly_factorization(const AugmentedSystem& sys, const MemoryParams& p,
                                     const Spectrum& spectrum, std::span<const cdouble> z_samples) {
  if (spectrum.size() != sys.n_agents)
    throw std::invalid_argument("verify_charpoly_factorization: spectrum size mismatch");
  Polynomial h1 = build_h1(p);
  double worst = 0.0;
  for (cdouble z : z_samples) {
    cdouble det = shifted_determinant(sys.phi, z);
    cdouble prod = (z - 1.0) * h1.eval(z);
    for (int i = 1; i < spectrum.size(); ++i) prod *= build_hi(p, spectrum.values[i]).eval(z);
    double scale = std::max(std::abs(det), std::abs(prod));
    if (scale < 1e-250)
      throw std::runtime_error("verify_charpoly_factorization: sample point at an eigenvalue, resample");
    worst = std::max(worst, std::abs(det - prod) / scale);
  }
  return worst;
}

std::vector<double> consensus_left_eigenvector(const MemoryParams& p, const SymMatrix& L) {
  const int N = L.size();
  const int M = p.taps();
  // Chain equations: the trailing blocks follow from block 1 by
  // back-substitution; block 1 spans the left null space of L.
  std::vector<double> block(M + 1);
  block[0] = 1.0 / N;
  if (M > 0) {
    block[M] = p.theta[M] / N;
    for (int j = M - 1; j >= 1; --j) block[j] = p.theta[j] / N + block[j + 1];
  }
  double sum = 0.0;
  for (double b : block) sum += b * N;
  if (std::abs(sum) < 1e-12)
    throw std::runtime_error("consensus_left_eigenvector: degenerate theta, normalization impossible");
  std::vector<double> phi1(static_cast<size_t>(N) * (M + 1));
  for (int m = 0; m <= M; ++m)
    for (int i = 0; i < N; ++i) phi1[static_cast<size_t>(m) * N + i] = block[m] / sum;
  return phi1;
}

}  // namespace consensus
