#pragma once

#include <vector>

#include "consensus/polynomial.hpp"

namespace consensus {

/// f(s) = (s-1)^d * h(gamma (s+1)/(s-1)) expanded to real coefficients,
/// d = deg h. Roots of h inside the closed disc D(0, gamma) correspond to
/// roots of f in the closed left half-plane (boundary maps to boundary;
/// a root exactly at z = +gamma drops the degree instead).
Polynomial bilinear_to_halfplane(const Polynomial& h, double gamma);

/// Standard Routh array. `degenerate` is set when a first-column zero pivot
/// required the epsilon substitution or a full zero row required the
/// auxiliary-polynomial derivative rule.
struct RouthTable {
  std::vector<std::vector<double>> rows;
  bool degenerate = false;
  std::vector<double> first_column() const;
};

RouthTable routh_table(const Polynomial& f);

/// Left-half-plane root test. Degree <= 2 uses the all-coefficients-same-sign
/// shortcut; degree >= 3 uses the Routh first column. Non-strict mode allows
/// imaginary-axis roots, strict mode requires the open half-plane (and
/// rejects degenerate tables).
bool halfplane_stable(const Polynomial& f, bool strict);

/// Interval polynomial a_k in [lo[k], hi[k]], ascending coefficient order.
struct IntervalPolynomial {
  std::vector<double> lo;
  std::vector<double> hi;
  int degree() const { return static_cast<int>(lo.size()) - 1; }
};

/// Schur stability of the whole interval family, decided by the 2^(n+1)
/// corner polynomials. Only valid for degree <= 3; the corner criterion has
/// no discrete-time counterpart above that, so higher degrees throw.
bool kharitonov_interval_stable(const IntervalPolynomial& ip);

/// Closed-form Schur tests (Jury criterion). Used where the companion-matrix
/// path would be too slow, e.g. dense parameter grids.
bool jury_schur_quadratic(double a1, double a0);          // z^2 + a1 z + a0
bool jury_schur_cubic(double a2, double a1, double a0);   // z^3 + a2 z^2 + a1 z + a0

}  // namespace consensus
