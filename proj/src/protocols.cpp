#include "consensus/protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace consensus {

namespace {

void require_positive_pair(double lambda2, double lambdaN, const char* who) {
  if (!(lambda2 > 0.0) || lambdaN < lambda2)
    throw std::invalid_argument(std::string(who) + ": need 0 < lambda2 <= lambdaN");
}

double optmem_gamma(double lambda2, double lambdaN) {
  const double s = std::sqrt(lambdaN / lambda2);
  return (s - 1.0) / (s + 1.0);
}

}  // namespace

std::pair<BcParams, double> params_and_rate_bc(double lambda2, double lambdaN) {
  require_positive_pair(lambda2, lambdaN, "params_and_rate_bc");
  BcParams p{2.0 / (lambda2 + lambdaN)};
  return {p, (lambdaN - lambda2) / (lambdaN + lambda2)};
}

std::pair<GfParams, double> params_and_rate_gf(double lambda2, double lambdaN) {
  require_positive_pair(lambda2, lambdaN, "params_and_rate_gf");
  GfParams p;
  for (int k = 1; k <= 3; ++k) {
    const double c = std::cos((2.0 * k - 1.0) / 6.0 * std::numbers::pi);
    p.gains[k - 1] = 2.0 / ((lambdaN - lambda2) * c + (lambdaN + lambda2));
  }
  if (lambda2 == lambdaN) return {p, 0.0};
  const double s = std::sqrt(lambdaN / lambda2);
  const double lo = 1.0 - 2.0 / (s + 1.0);
  const double hi = 1.0 + 2.0 / (s - 1.0);
  const double gamma = std::cbrt(2.0 / (lo * lo * lo + hi * hi * hi));
  return {p, gamma};
}

std::pair<MemParams, Rate> params_and_rate_mem(double rho_s) {
  if (rho_s < 0.0 || rho_s > 1.0) throw std::invalid_argument("params_and_rate_mem: rho_s in [0, 1] required");
  const double root = std::sqrt(1.0 - rho_s * rho_s);
  MemParams p{(root - 1.0) / (root + 1.0)};
  Rate r;
  if (rho_s >= 1.0 - 1e-12) {  // rho_s at 1 up to eigenvalue roundoff
    r.gamma = 1.0;
    r.divergent = true;
    return {p, r};
  }
  r.gamma = rho_s / (1.0 + root);
  r.divergent = r.gamma >= 1.0;
  return {p, r};
}

std::pair<GMemParams, Rate> params_and_rate_gmem(double rho_s, double eps_free) {
  if (rho_s < 0.0 || rho_s > 1.0) throw std::invalid_argument("params_and_rate_gmem: rho_s in [0, 1] required");
  if (eps_free == 0.0) throw std::invalid_argument("params_and_rate_gmem: free parameter must be nonzero");
  GMemParams p;
  p.beta1 = -eps_free;
  p.beta2 = 0.0;
  p.beta3 = 1.0 + eps_free;
  Rate r;
  if (rho_s == 0.0) {
    p.alpha = 0.0;
    return {p, r};  // 0/0 limit: immediate consensus, rate 0
  }
  const double root = std::sqrt(1.0 - rho_s * rho_s);
  // sqrt(2 - rho^2 - 2 root) = 1 - root exactly; evaluate through the
  // cancellation-free equivalent rho/(1 + root).
  if (rho_s >= 1.0 - 1e-12) {
    r.gamma = 1.0;
    r.divergent = true;
    p.alpha = 1.0 / eps_free;
    return {p, r};
  }
  r.gamma = rho_s / (1.0 + root);
  p.alpha = r.gamma * r.gamma / eps_free;
  r.divergent = r.gamma >= 1.0;
  return {p, r};
}

std::pair<FirMemParams, double> params_and_rate_firmem(double lambda2, double lambdaN) {
  require_positive_pair(lambda2, lambdaN, "params_and_rate_firmem");
  const double gamma = (lambdaN - lambda2) / (3.0 * lambda2 + lambdaN);
  FirMemParams p;
  p.beta0 = (lambda2 + 3.0 * lambdaN) / (lambdaN * (lambdaN + 3.0 * lambda2));
  // Equivalently (1 + 2 gamma)/lambdaN; the tap on the previous step is
  // gamma^2 / lambdaN, which places a double root -gamma at lambdaN and a
  // simple root +gamma at lambda2.
  p.beta1 = gamma * gamma / lambdaN;
  return {p, gamma};
}

std::pair<MemoryParams, double> optmem_m1(double lambda2, double lambdaN) {
  require_positive_pair(lambda2, lambdaN, "optmem_m1");
  const double gamma = optmem_gamma(lambda2, lambdaN);
  const double alpha = 4.0 / std::pow(std::sqrt(lambdaN) + std::sqrt(lambda2), 2);
  const double theta0 = gamma * gamma;
  return {MemoryParams(alpha, {theta0, -theta0}), gamma};
}

std::pair<MemoryParams, double> optmem_m2(double lambda2, double lambdaN) {
  auto [m1, gamma] = optmem_m1(lambda2, lambdaN);
  return {MemoryParams(m1.alpha, {m1.theta[0], m1.theta[1], 0.0}), gamma};
}

std::pair<MemoryParams, double> optmem_worstcase(double lambda_lo, double lambda_hi, int M) {
  require_positive_pair(lambda_lo, lambda_hi, "optmem_worstcase");
  if (M < 1) throw std::invalid_argument("optmem_worstcase: M >= 1 required");
  const double gamma = optmem_gamma(lambda_lo, lambda_hi);
  const double alpha = 4.0 / std::pow(std::sqrt(lambda_hi) + std::sqrt(lambda_lo), 2);
  std::vector<double> theta(M + 1, 0.0);
  theta[0] = gamma * gamma;
  theta[1] = -theta[0];
  return {MemoryParams(alpha, std::move(theta)), gamma};
}

double rate_theorem1(const Spectrum& spectrum, const MemoryParams& p) {
  if (spectrum.values.empty()) throw std::invalid_argument("rate_theorem1: empty spectrum");
  if (std::abs(spectrum.values.front()) > 1e-6 * std::max(1.0, std::abs(spectrum.values.back())))
    throw std::invalid_argument("rate_theorem1: spectrum lacks the zero eigenvalue of a connected graph");
  double gamma = 0.0;
  Polynomial h1 = build_h1(p);
  if (h1.degree() >= 1) gamma = max_modulus_root(h1);
  for (int i = 1; i < spectrum.size(); ++i)
    gamma = std::max(gamma, max_modulus_root(build_hi(p, spectrum.values[i])));
  return gamma;
}

double rate_theorem2(double lambda2, double lambdaN, const MemoryParams& p) {
  require_positive_pair(lambda2, lambdaN, "rate_theorem2");
  if (p.taps() > 2)
    throw std::invalid_argument(
        "rate_theorem2: corner reduction only valid for M <= 2 (no discrete Kharitonov theorem above degree 3)");
  double gamma = 0.0;
  Polynomial h1 = build_h1(p);
  if (h1.degree() >= 1) gamma = max_modulus_root(h1);
  gamma = std::max(gamma, max_modulus_root(build_hi(p, lambda2)));
  gamma = std::max(gamma, max_modulus_root(build_hi(p, lambdaN)));
  return gamma;
}

Corollary2Result corollary2_gap(double lambda2, double lambdaN) {
  require_positive_pair(lambda2, lambdaN, "corollary2_gap");
  Corollary2Result r;
  r.gamma1 = optmem_gamma(lambda2, lambdaN);
  const double rho = std::max(std::abs(1.0 - lambda2), std::abs(1.0 - lambdaN));
  if (rho >= 1.0) {
    r.divergent = true;
    r.gamma_mem = 1.0;
    r.gap = r.gamma_mem - r.gamma1;
    return r;
  }
  r.gamma_mem = rho / (1.0 + std::sqrt(1.0 - rho * rho));
  r.gap = r.gamma_mem - r.gamma1;
  return r;
}

double remark3_ratio(double lambda2, double lambdaN) {
  require_positive_pair(lambda2, lambdaN, "remark3_ratio");
  if (lambda2 == lambdaN) return 1.0;
  return 1.0 + (2.0 * std::sqrt(lambdaN * lambda2) - 2.0 * lambda2) / (3.0 * lambda2 + lambdaN);
}

namespace {

RateReport assemble_report(double lambda2, double lambdaN, double rho_s) {
  RateReport rep;
  rep.lambda2 = lambda2;
  rep.lambdaN = lambdaN;
  rep.eigenratio = lambda2 / lambdaN;
  rep.rho_s = rho_s;

  auto [bc, g_bc] = params_and_rate_bc(lambda2, lambdaN);
  rep.bc = {Rate{g_bc, g_bc >= 1.0}, bc};
  auto [gf, g_gf] = params_and_rate_gf(lambda2, lambdaN);
  rep.gf = {Rate{g_gf, g_gf >= 1.0}, gf};
  auto [mem, r_mem] = params_and_rate_mem(rho_s);
  rep.mem = {r_mem, mem};
  auto [gmem, r_gmem] = params_and_rate_gmem(rho_s);
  rep.gmem = {r_gmem, gmem};
  auto [fir, g_fir] = params_and_rate_firmem(lambda2, lambdaN);
  rep.firmem = {Rate{g_fir, g_fir >= 1.0}, fir};
  auto [opt, g_opt] = optmem_m1(lambda2, lambdaN);
  rep.optmem = {Rate{g_opt, g_opt >= 1.0}, opt};
  return rep;
}

}  // namespace

RateReport table2_report(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("table2_report: graph must be connected");
  Spectrum spec = sym_eigenvalues(laplacian(g));
  auto [lambda2, lambdaN] = extreme_nonzero(spec);
  const double rho_s = rho_s_weight(metropolis_weights(g));
  return assemble_report(lambda2, lambdaN, rho_s);
}

RateReport table2_report_from_spectra(double eigenratio, double rho_s) {
  if (!(eigenratio > 0.0) || eigenratio > 1.0)
    throw std::invalid_argument("table2_report_from_spectra: eigenratio in (0, 1] required");
  // Only the ratio matters for the Laplacian-based rates; fix lambdaN = 1.
  return assemble_report(eigenratio, 1.0, rho_s);
}

}  // namespace consensus
