#pragma once

#include <array>
#include <string>
#include <variant>

#include "consensus/graph.hpp"
#include "consensus/polynomial.hpp"

namespace consensus {

// Per-algorithm parameter payloads. Conventions:
//  - BC and GF act on the Laplacian: x+ = (I - eps(k) L) x.
//  - Mem and GMem act on a row-stochastic weight matrix W.
//  - FIRMem acts on the Laplacian with taps on the current and previous step.
//  - OptMem is the M-tap memory protocol (MemoryParams).
struct BcParams {
  double epsilon = 0.0;
};
struct GfParams {
  std::array<double, 3> gains{};  // applied 3-periodically
};
struct MemParams {
  double alpha = 0.0;  // x+ = (1-alpha) W x + alpha x_prev
};
struct GMemParams {
  double alpha = 0.0, beta1 = 0.0, beta2 = 0.0, beta3 = 0.0;
};
struct FirMemParams {
  double beta0 = 0.0, beta1 = 0.0;  // x+ = x - beta0 L x - beta1 L x_prev
};

using ProtocolParams = std::variant<BcParams, GfParams, MemParams, GMemParams, FirMemParams, MemoryParams>;

/// Rate with a divergence marker; divergent iff gamma >= 1.
struct Rate {
  double gamma = 0.0;
  bool divergent = false;
};

std::pair<BcParams, double> params_and_rate_bc(double lambda2, double lambdaN);
std::pair<GfParams, double> params_and_rate_gf(double lambda2, double lambdaN);
std::pair<MemParams, Rate> params_and_rate_mem(double rho_s);
std::pair<GMemParams, Rate> params_and_rate_gmem(double rho_s, double eps_free = 1.0);
std::pair<FirMemParams, double> params_and_rate_firmem(double lambda2, double lambdaN);

/// Optimal one-tap memory protocol on a fixed graph:
/// gamma* = (sqrt(lN/l2)-1)/(sqrt(lN/l2)+1), alpha* = 4/(sqrt(lN)+sqrt(l2))^2,
/// theta0* = gamma*^2, theta1* = -theta0*.
std::pair<MemoryParams, double> optmem_m1(double lambda2, double lambdaN);

/// Two-tap optimum: identical rate and parameters with theta2* = 0.
std::pair<MemoryParams, double> optmem_m2(double lambda2, double lambdaN);

/// Optimal worst-case protocol over all connected graphs with nonzero
/// Laplacian spectrum inside [lambda_lo, lambda_hi]; theta_m* = 0 for m >= 2,
/// any M >= 1.
std::pair<MemoryParams, double> optmem_worstcase(double lambda_lo, double lambda_hi, int M);

/// gamma_M as the maximum stability radius over h_1 and h_i(lambda_i) for the
/// full Laplacian spectrum (polynomial-root route; agrees with rho_s_phi).
double rate_theorem1(const Spectrum& spectrum, const MemoryParams& p);

/// Same rate from the corner polynomials {h_1, h_2, h_N} only. Valid for
/// M <= 2 (discrete Kharitonov corner reduction); throws above.
double rate_theorem2(double lambda2, double lambdaN, const MemoryParams& p);

/// Mem-vs-OptMem comparison under the W = I - L convention:
/// gap = gamma_Mem - gamma_1* >= 0, zero only when lambda2 + lambdaN = 2.
struct Corollary2Result {
  double gamma_mem = 0.0;
  double gamma1 = 0.0;
  double gap = 0.0;
  bool divergent = false;  // rho_s(I - L) >= 1
};
Corollary2Result corollary2_gap(double lambda2, double lambdaN);

/// gamma_FIRMem* / gamma_1* = 1 + (2 sqrt(lN l2) - 2 l2)/(3 l2 + lN) > 1.
double remark3_ratio(double lambda2, double lambdaN);

/// One rate-table row: spectral data plus the six tuned algorithms.
struct RateEntry {
  Rate rate;
  ProtocolParams params;
};
struct RateReport {
  double lambda2 = 0.0, lambdaN = 0.0;
  double eigenratio = 0.0;
  double rho_s = 0.0;  // Metropolis-Hastings weights
  RateEntry bc, gf, mem, gmem, firmem, optmem;
};

RateReport table2_report(const Graph& g);

/// Rates for a graph known only through its eigenratio and rho_s(W), as
/// published for the random sample graphs.
RateReport table2_report_from_spectra(double eigenratio, double rho_s);

}  // namespace consensus
