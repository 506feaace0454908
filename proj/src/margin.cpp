#include "consensus/margin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "consensus/spectral.hpp"

namespace consensus {

namespace {

using CMat = std::vector<std::vector<cdouble>>;

// Cholesky factor L (lower) of a Hermitian positive definite matrix.
CMat cholesky(const CMat& a) {
  const int n = static_cast<int>(a.size());
  CMat l(n, std::vector<cdouble>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      cdouble s = a[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * std::conj(l[j][k]);
      if (i == j) {
        const double d = s.real();
        if (d <= 1e-12 * a[i][i].real() || std::abs(s.imag()) > 1e-12 * std::max(1.0, d))
          throw std::runtime_error("gamma_inf: B1 not positive definite (coincident c_i?)");
        l[i][i] = std::sqrt(d);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

}  // namespace

double gamma_inf(const MarginData& d) {
  const int n = static_cast<int>(d.c.size());
  if (n == 0 || d.b.size() != d.c.size()) throw std::invalid_argument("gamma_inf: malformed margin data");
  for (const auto& ci : d.c)
    if (ci.real() <= 0.0) throw std::invalid_argument("gamma_inf: all c_i must lie in the open right half-plane");

  CMat b1(n, std::vector<cdouble>(n)), b2(n, std::vector<cdouble>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cdouble den = d.c[i] + std::conj(d.c[j]);
      b1[i][j] = 1.0 / den;
      b2[i][j] = d.b[i] * std::conj(d.b[j]) / den;
    }

  // Generalized problem B2 v = mu B1 v reduced to the Hermitian matrix
  // M = L^{-1} B2 L^{-H} with B1 = L L^H.
  CMat l = cholesky(b1);
  CMat y(n, std::vector<cdouble>(n));  // Y = L^{-1} B2, column by column
  for (int col = 0; col < n; ++col)
    for (int i = 0; i < n; ++i) {
      cdouble s = b2[i][col];
      for (int k = 0; k < i; ++k) s -= l[i][k] * y[k][col];
      y[i][col] = s / l[i][i];
    }
  CMat m(n, std::vector<cdouble>(n));  // M = Y L^{-H}: solve conj(L) M^T = Y^T row-wise
  for (int row = 0; row < n; ++row)
    for (int j = 0; j < n; ++j) {
      cdouble s = y[row][j];
      for (int k = 0; k < j; ++k) s -= m[row][k] * std::conj(l[j][k]);
      m[row][j] = s / l[j][j];
    }

  // Hermitian M = A + iB embeds as the symmetric [[A, -B], [B, A]] with the
  // same (doubled) spectrum.
  SymMatrix emb(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const cdouble v = 0.5 * (m[i][j] + std::conj(m[j][i]));  // symmetrize roundoff
      emb.set(i, j, v.real());
      emb.set(n + i, n + j, v.real());
      if (i != j) {
        emb.set(i, n + j, -v.imag());
        emb.set(j, n + i, v.imag());
      }
    }
  Spectrum s = sym_eigenvalues(emb);
  const double top = s.values.back();
  if (top < -1e-10) throw std::runtime_error("gamma_inf: negative top eigenvalue, numerical failure");
  return std::sqrt(std::max(0.0, top));
}

double k_sup(double gamma_inf_val, bool stable_or_minphase) {
  if (gamma_inf_val < 0.0) throw std::invalid_argument("k_sup: gamma_inf must be nonnegative");
  if (stable_or_minphase || gamma_inf_val <= 1.0) return std::numeric_limits<double>::infinity();
  const double q = (gamma_inf_val + 1.0) / (gamma_inf_val - 1.0);
  return q * q;
}

Lemma5Result lemma5_margin(double r) {
  if (!(r > 0.0) || !(r < 1.0)) throw std::invalid_argument("lemma5_margin: r in (0, 1) required");
  // Coprime factorization of the continuous-time image of the plant:
  //   U(s)  = lam/(1-r) * (s-1)/(s+1),    V(s) = (-s + (1+r)/(1-r))/(s+1),
  //   Yu(s) = (1-r)/(lam r),              Yv(s) = (1-r)/r.
  // The lam factor cancels inside b_i = U(c_i) Yu(c_i); use lam = 1.
  const double lam = 1.0;
  const double cu = lam / (1.0 - r);
  const Polynomial u_num({-cu, cu}), den({1.0, 1.0});
  const Polynomial v_num({(1.0 + r) / (1.0 - r), -1.0});
  const double yu = (1.0 - r) / (lam * r);
  const double yv = (1.0 - r) / r;

  Lemma5Result out;
  // Bezout residual |U Yu + V Yv - 1| at points on the imaginary axis.
  for (int k = 0; k <= 10; ++k) {
    const cdouble s(0.0, -5.0 + k);
    const cdouble val = u_num.eval(s) / den.eval(s) * yu + v_num.eval(s) / den.eval(s) * yv;
    out.bezout_residual = std::max(out.bezout_residual, std::abs(val - 1.0));
  }
  if (out.bezout_residual > 1e-10)
    throw std::runtime_error("lemma5_margin: coprime factorization failed the Bezout identity");

  // Right-half-plane zeros of U V: s = 1 from U, s = (1+r)/(1-r) from V.
  const cdouble c1(1.0, 0.0), c2((1.0 + r) / (1.0 - r), 0.0);
  out.data.c = {c1, c2};
  out.data.b = {u_num.eval(c1) / den.eval(c1) * yu, u_num.eval(c2) / den.eval(c2) * yu};

  out.gamma_inf = gamma_inf(out.data);
  out.k_sup = k_sup(out.gamma_inf, /*stable_or_minphase=*/false);
  return out;
}

double worstcase_rate_lower_bound(double ratio) {
  if (ratio < 1.0) throw std::invalid_argument("worstcase_rate_lower_bound: ratio >= 1 required");
  const double s = std::sqrt(ratio);
  return (s - 1.0) / (s + 1.0);
}

Polynomial closed_loop_poly(const MemoryParams& p, double lambda) {
  Polynomial zm1({-1.0, 1.0});
  std::vector<double> fwd(p.taps() + 1, 0.0);
  fwd[p.taps()] = p.alpha * lambda;  // alpha lambda z^M
  Polynomial h = zm1 * build_h1(p);
  std::vector<double> c = h.coeffs();
  c.resize(std::max(c.size(), fwd.size()), 0.0);
  for (size_t i = 0; i < fwd.size(); ++i) c[i] += fwd[i];
  return Polynomial(std::move(c));
}

}  // namespace consensus
