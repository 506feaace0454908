#pragma once

#include <vector>

#include "consensus/polynomial.hpp"

namespace consensus {

/// Gain-margin data of a coprime plant factorization P = U/V with Bezout
/// certificate U Yu + V Yv = 1: the right-half-plane zeros c_i of U*V and
/// the values b_i = U(c_i) Yu(c_i).
struct MarginData {
  std::vector<cdouble> c;
  std::vector<cdouble> b;
};

/// gamma_inf = sqrt(max eigenvalue of B1^{-1} B2) with the Cauchy-like
/// Gramians B1 = (1/(c_i + conj(c_j))), B2 = (b_i conj(b_j)/(c_i + conj(c_j))).
/// Solved as the generalized Hermitian problem B2 v = mu B1 v through a
/// Cholesky factor of B1 (no explicit inverse). Throws on singular B1 or a
/// computed top eigenvalue below -1e-10.
double gamma_inf(const MarginData& d);

/// Optimal gain margin from gamma_inf: infinity for a stable or minimum-phase
/// plant, otherwise ((gamma+1)/(gamma-1))^2; gamma <= 1 also means no finite
/// constraint.
double k_sup(double gamma_inf_val, bool stable_or_minphase);

/// The Appendix computation for the plant lambda (rz)^{-1} / (1 - (rz)^{-1}):
/// builds the coprime factorization, checks the Bezout identity at sample
/// points on the imaginary axis, and returns the margin data together with
/// gamma_inf = 1/r and k_sup = ((1+r)/(1-r))^2.
struct Lemma5Result {
  MarginData data;
  double gamma_inf = 0.0;
  double k_sup = 0.0;
  double bezout_residual = 0.0;  // max |U Yu + V Yv - 1| over the samples
};
Lemma5Result lemma5_margin(double r);

/// Smallest r with ((1+r)/(1-r))^2 >= ratio: (sqrt(ratio)-1)/(sqrt(ratio)+1).
/// Equals the optimal worst-case convergence rate for ratio = l_hi/l_lo.
double worstcase_rate_lower_bound(double ratio);

/// Denominator of the closed loop T(z; lambda): (z-1) h1(z) + alpha lambda z^M.
/// Coefficientwise equal to build_hi(p, lambda).
Polynomial closed_loop_poly(const MemoryParams& p, double lambda);

}  // namespace consensus
