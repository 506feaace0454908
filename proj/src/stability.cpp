#include "consensus/stability.hpp"

#include <cmath>
#include <stdexcept>

namespace consensus {

namespace {

// Coefficients of (s+1)^a * (s-1)^b, ascending.
std::vector<double> binomial_product(int a, int b) {
  std::vector<double> c{1.0};
  for (int k = 0; k < a; ++k) {  // multiply by (s+1)
    std::vector<double> r(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      r[i] += c[i];
      r[i + 1] += c[i];
    }
    c = std::move(r);
  }
  for (int k = 0; k < b; ++k) {  // multiply by (s-1)
    std::vector<double> r(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      r[i] -= c[i];
      r[i + 1] += c[i];
    }
    c = std::move(r);
  }
  return c;
}

}  // namespace

Polynomial bilinear_to_halfplane(const Polynomial& h, double gamma) {
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("bilinear_to_halfplane: gamma in (0, 1] required");
  const int d = h.degree();
  if (d < 1) throw std::invalid_argument("bilinear_to_halfplane: degree >= 1 required");
  std::vector<double> f(d + 1, 0.0);
  double gk = 1.0;
  for (int k = 0; k <= d; ++k) {
    const double coef = h[k] * gk;
    gk *= gamma;
    if (coef == 0.0) continue;
    auto term = binomial_product(k, d - k);
    for (int i = 0; i <= d; ++i) f[i] += coef * term[i];
  }
  return Polynomial(std::move(f));
}

RouthTable routh_table(const Polynomial& f) {
  const int d = f.degree();
  if (d < 1) throw std::invalid_argument("routh_table: degree >= 1 required");
  if (f.coeffs().back() == 0.0) throw std::invalid_argument("routh_table: zero leading coefficient");
  RouthTable t;
  t.rows.resize(d + 1);
  const int width = d / 2 + 1;
  t.rows[0].resize(width, 0.0);
  t.rows[1].resize(width, 0.0);
  for (int j = 0; j * 2 <= d; ++j) t.rows[0][j] = f[d - 2 * j];
  for (int j = 0; j * 2 + 1 <= d; ++j) t.rows[1][j] = f[d - 1 - 2 * j];
  if (d == 1) {
    t.rows.resize(2);
    return t;
  }

  // rows[] keeps the raw recurrence values; the degenerate substitutions
  // (epsilon pivot, auxiliary-polynomial derivative for a zero row) happen
  // only in the working copy the recurrence continues from.
  constexpr double kEps = 1e-30;  // sign carrier for exact zero pivots
  std::vector<std::vector<double>> work = t.rows;
  for (int i = 2; i <= d; ++i) {
    auto& prev = work[i - 1];
    const auto& prev2 = work[i - 2];
    bool all_zero = true;
    for (double v : prev)
      if (v != 0.0) all_zero = false;
    if (all_zero) {
      // Differentiate the auxiliary polynomial formed from the row above
      // (even powers s^{d-i+2}, s^{d-i}, ...).
      t.degenerate = true;
      const int power = d - i + 2;
      for (size_t j = 0; j < prev.size(); ++j) {
        const int p = power - 2 * static_cast<int>(j);
        prev[j] = p > 0 ? prev2[j] * p : 0.0;
      }
    } else if (prev[0] == 0.0) {
      t.degenerate = true;
      prev[0] = kEps;
    }
    const int len = (d - i) / 2 + 1;
    t.rows[i].resize(len, 0.0);
    for (int j = 0; j < len; ++j) {
      const double up1 = (j + 1 < static_cast<int>(prev2.size())) ? prev2[j + 1] : 0.0;
      const double up0 = (j + 1 < static_cast<int>(prev.size())) ? prev[j + 1] : 0.0;
      t.rows[i][j] = (prev[0] * up1 - prev2[0] * up0) / prev[0];
    }
    work[i] = t.rows[i];
  }
  return t;
}

std::vector<double> RouthTable::first_column() const {
  std::vector<double> c;
  c.reserve(rows.size());
  for (const auto& r : rows) c.push_back(r.empty() ? 0.0 : r[0]);
  return c;
}

bool halfplane_stable(const Polynomial& f, bool strict) {
  const int d = f.degree();
  if (d < 1) throw std::invalid_argument("halfplane_stable: degree >= 1 required");
  const double sign = f.coeffs().back() > 0.0 ? 1.0 : -1.0;
  if (d <= 2) {
    for (double c : f.coeffs()) {
      const double v = sign * c;
      if (strict ? v <= 0.0 : v < 0.0) return false;
    }
    return true;
  }
  RouthTable t = routh_table(f);
  if (strict && t.degenerate) return false;
  for (double v : t.first_column()) {
    const double sv = sign * v;
    if (strict ? sv <= 0.0 : sv < 0.0) return false;
  }
  return true;
}

bool kharitonov_interval_stable(const IntervalPolynomial& ip) {
  const int n = ip.degree();
  if (n > 3)
    throw std::invalid_argument(
        "kharitonov_interval_stable: corner criterion only valid for degree <= 3 in discrete time");
  if (n < 1 || ip.hi.size() != ip.lo.size())
    throw std::invalid_argument("kharitonov_interval_stable: malformed interval polynomial");
  for (int k = 0; k <= n; ++k)
    if (ip.lo[k] > ip.hi[k]) throw std::invalid_argument("kharitonov_interval_stable: lo > hi");
  if (ip.lo[n] <= 0.0 && ip.hi[n] >= 0.0)
    throw std::invalid_argument("kharitonov_interval_stable: leading coefficient interval contains 0");

  const int corners = 1 << (n + 1);
  std::vector<double> c(n + 1);
  for (int mask = 0; mask < corners; ++mask) {
    for (int k = 0; k <= n; ++k) c[k] = (mask >> k) & 1 ? ip.hi[k] : ip.lo[k];
    if (!is_schur_stable(Polynomial(c))) return false;
  }
  return true;
}

bool jury_schur_quadratic(double a1, double a0) {
  return std::abs(a0) < 1.0 && std::abs(a1) < 1.0 + a0;
}

bool jury_schur_cubic(double a2, double a1, double a0) {
  if (std::abs(a0) >= 1.0) return false;
  if (1.0 + a2 + a1 + a0 <= 0.0) return false;        // p(1) > 0
  if (-1.0 + a2 - a1 + a0 >= 0.0) return false;       // p(-1) < 0
  return std::abs(a0 * a2 - a1) < 1.0 - a0 * a0;
}

}  // namespace consensus
