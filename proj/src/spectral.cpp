#include "consensus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace consensus {

namespace {

double off_diagonal_frobenius(const SymMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius(const SymMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

Spectrum sym_eigenvalues(const SymMatrix& m, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("sym_eigenvalues: tol must be positive");
  const int n = m.size();
  if (n == 0) return {};
  SymMatrix a = m;
  const double scale = std::max(1.0, frobenius(a));
  const int max_sweeps = 64;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = off_diagonal_frobenius(a);
    if (off <= tol * scale) {
      Spectrum s;
      s.values.resize(n);
      for (int i = 0; i < n; ++i) s.values[i] = a(i, i);
      std::sort(s.values.begin(), s.values.end());
      return s;
    }
    // One cyclic sweep of all off-diagonal pairs.
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        if (std::abs(apq) <= std::numeric_limits<double>::epsilon() * 0.5 *
                                (std::abs(app) + std::abs(aqq)))
          continue;
        const double theta = 0.5 * (aqq - app) / apq;
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a.set(p, p, app - t * apq);
        a.set(q, q, aqq + t * apq);
        a.set(p, q, 0.0);
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a.set(k, p, akp - s * (akq + tau * akp));
          a.set(k, q, akq + s * (akp - tau * akq));
        }
      }
    }
  }
  throw std::runtime_error("sym_eigenvalues: Jacobi sweeps did not converge");
}

std::pair<double, double> extreme_nonzero(const Spectrum& s, double zero_tol) {
  if (s.values.empty()) throw std::invalid_argument("extreme_nonzero: empty spectrum");
  const double lambda_max = s.values.back();
  if (zero_tol < 0.0) zero_tol = 1e-9 * std::max(1.0, lambda_max);
  int below = 0;
  double lambda2 = 0.0;
  bool found = false;
  for (double v : s.values) {
    if (v <= zero_tol) {
      below++;
    } else if (!found) {
      lambda2 = v;
      found = true;
    }
  }
  if (below > 1) throw std::runtime_error("extreme_nonzero: multiple near-zero eigenvalues (graph disconnected?)");
  if (!found) throw std::runtime_error("extreme_nonzero: no eigenvalue above zero tolerance");
  return {lambda2, lambda_max};
}

double rho_s_weight(const SymMatrix& w) {
  Spectrum s = sym_eigenvalues(w);
  // Drop one copy of the eigenvalue 1, take max modulus of the rest.
  int one_idx = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.size(); ++i) {
    double d = std::abs(s.values[i] - 1.0);
    if (d < best) {
      best = d;
      one_idx = i;
    }
  }
  if (one_idx < 0 || best > 1e-9)
    throw std::runtime_error("rho_s_weight: no eigenvalue at 1 (matrix not stochastic?)");
  double rho = 0.0;
  for (int i = 0; i < s.size(); ++i)
    if (i != one_idx) rho = std::max(rho, std::abs(s.values[i]));
  return rho;
}

namespace {

// EISPACK-style balancing (scaling only, no permutation). Improves the
// accuracy of the QR iteration for matrices with wide entry ranges, e.g.
// companion matrices.
void balance(Matrix& a) {
  const int n = a.rows();
  const double radix = 2.0;
  const double sq = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sq;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double ginv = 1.0 / f;
        for (int j = 0; j < n; ++j) a(i, j) *= ginv;
        for (int j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (eigenvalues preserved).
void hessenberg(Matrix& a) {
  const int n = a.rows();
  for (int k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
    if (scale == 0.0) continue;
    std::vector<double> v(n, 0.0);
    double h = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = a(i, k) / scale;
      h += v[i] * v[i];
    }
    double g = -std::copysign(std::sqrt(h), v[k + 1]);
    h -= v[k + 1] * g;
    v[k + 1] -= g;
    // A <- P A P with P = I - v v^T / h
    for (int j = 0; j < n; ++j) {  // left multiply
      double f = 0.0;
      for (int i = k + 1; i < n; ++i) f += v[i] * a(i, j);
      f /= h;
      for (int i = k + 1; i < n; ++i) a(i, j) -= f * v[i];
    }
    for (int i = 0; i < n; ++i) {  // right multiply
      double f = 0.0;
      for (int j = k + 1; j < n; ++j) f += a(i, j) * v[j];
      f /= h;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * v[j];
    }
    a(k + 1, k) = scale * g;
    for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix; returns all
// eigenvalues. Classic hqr scheme with exceptional shifts at iterations
// 10 and 20 and a hard cap of 30 per eigenvalue.
std::vector<cdouble> hqr(Matrix& h) {
  const int n = h.rows();
  std::vector<cdouble> eig;
  eig.reserve(n);
  const double eps = std::numeric_limits<double>::epsilon();

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
  if (anorm == 0.0) {
    for (int i = 0; i < n; ++i) eig.push_back(0.0);
    return eig;
  }

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(h(l, l - 1)) <= eps * s) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      double x = h(nn, nn);
      if (l == nn) {
        eig.emplace_back(x + t, 0.0);
        nn--;
      } else {
        double y = h(nn - 1, nn - 1);
        double w = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            eig.emplace_back(x + z, 0.0);
            eig.emplace_back(z != 0.0 ? x - w / z : x + z, 0.0);
          } else {
            eig.emplace_back(x + p, z);
            eig.emplace_back(x + p, -z);
          }
          nn -= 2;
        } else {
          if (its == 30) throw std::runtime_error("general_eigenvalues: QR iteration did not converge");
          if (its == 10 || its == 20) {
            t += x;
            for (int i = 0; i <= nn; ++i) h(i, i) -= x;
            double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m;
          double p = 0.0, q = 0.0, r = 0.0;
          for (m = nn - 2; m >= l; --m) {
            double z = h(m, m);
            double rr = x - z;
            double ss = y - z;
            p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - rr - ss;
            r = h(m + 2, m + 1);
            double s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
            double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0.0;
            if (i > m + 2) h(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = h(k, k - 1);
              q = h(k + 1, k - 1);
              r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
              h(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            double y2 = q / s;
            double z2 = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {  // row modification
              double pp = h(k, j) + q * h(k + 1, j);
              if (k != nn - 1) pp += r * h(k + 2, j);
              h(k, j) -= pp * x;
              h(k + 1, j) -= pp * y2;
              if (k != nn - 1) h(k + 2, j) -= pp * z2;
            }
            int mmin = (nn < k + 3) ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {  // column modification
              double pp = x * h(i, k) + y2 * h(i, k + 1);
              if (k != nn - 1) pp += z2 * h(i, k + 2);
              h(i, k) -= pp;
              h(i, k + 1) -= pp * q;
              if (k != nn - 1) h(i, k + 2) -= pp * r;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return eig;
}

}  // namespace

std::vector<cdouble> general_eigenvalues(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("general_eigenvalues: matrix must be square");
  const int n = m.rows();
  if (n == 0) return {};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(m(i, j))) throw std::invalid_argument("general_eigenvalues: non-finite entry");
  if (n == 1) return {cdouble(m(0, 0), 0.0)};
  balance(m);
  hessenberg(m);
  return hqr(m);
}

std::vector<double> general_eigen_moduli(const Matrix& m) {
  auto eig = general_eigenvalues(m);
  std::vector<double> mod(eig.size());
  for (size_t i = 0; i < eig.size(); ++i) mod[i] = std::abs(eig[i]);
  std::sort(mod.begin(), mod.end(), std::greater<double>());
  return mod;
}

}  // namespace consensus
