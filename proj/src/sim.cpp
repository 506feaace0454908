#include "consensus/sim.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "consensus/rng.hpp"

namespace consensus {

namespace {

constexpr double kDivergenceCutoff = 1e12;

std::vector<double> initial_state(int n, const SimConfig& cfg) {
  if (cfg.x0) {
    if (static_cast<int>(cfg.x0->size()) != n)
      throw std::invalid_argument("simulate: x0 dimension mismatch");
    return *cfg.x0;
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> x(n);
  for (double& v : x) v = uniform_unit(rng);
  return x;
}

double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double error_norm(const std::vector<double>& x, double xbar) {
  double s = 0.0;
  for (double v : x) s += (v - xbar) * (v - xbar);
  return std::sqrt(s);
}

// Runs x(k+1) = f(history) given a step functor producing the next state
// from the recorded history (most recent last). Every protocol here leaves
// the initial average invariant, so the iteration is carried on the
// deviation from it; this keeps the consensus direction free of accumulated
// roundoff and lets the recorded error decay to the true noise floor.
template <typename Step>
Trajectory run(int n, const SimConfig& cfg, int history, Step step) {
  if (cfg.steps < 1) throw std::invalid_argument("simulate: steps >= 1 required");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("simulate: tol > 0 required");
  Trajectory t;
  t.tol = cfg.tol;
  std::vector<double> x = initial_state(n, cfg);
  t.xbar = mean(x);
  const double e0 = error_norm(x, t.xbar);
  const bool at_consensus = e0 < 1e-300;

  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = x[i] - t.xbar;
  auto record = [&](const std::vector<double>& dev) {
    std::vector<double> state(n);
    for (int i = 0; i < n; ++i) state[i] = dev[i] + t.xbar;
    t.states.push_back(std::move(state));
  };

  // Flat history: x(-M) = ... = x(0).
  std::vector<std::vector<double>> past(history + 1, y);
  record(y);
  t.errors.push_back(at_consensus ? 0.0 : 1.0);
  for (int k = 0; k < cfg.steps; ++k) {
    std::vector<double> next = step(past);
    past.erase(past.begin());
    past.push_back(next);
    const double e = at_consensus ? 0.0 : error_norm(next, 0.0) / e0;
    record(next);
    t.errors.push_back(e);
    if (!std::isfinite(e) || e > kDivergenceCutoff) {
      t.diverged = true;
      break;
    }
    if (e <= cfg.tol) break;
  }
  t.settled_at = settling_steps(t);
  return t;
}

}  // namespace

Trajectory simulate_memory(const SymMatrix& L, const MemoryParams& p, const SimConfig& cfg) {
  const int n = L.size();
  const int M = p.taps();
  return run(n, cfg, M, [&](const std::vector<std::vector<double>>& past) {
    // past holds x(k-M) ... x(k)
    const auto& xk = past.back();
    std::vector<double> next = L.apply(xk);
    for (int i = 0; i < n; ++i) next[i] = (1.0 + p.theta[0]) * xk[i] - p.alpha * next[i];
    for (int m = 1; m <= M; ++m) {
      const auto& xm = past[past.size() - 1 - m];
      for (int i = 0; i < n; ++i) next[i] += p.theta[m] * xm[i];
    }
    return next;
  });
}

Trajectory simulate_weight_scheme(const SymMatrix& m, const ProtocolParams& params, const SimConfig& cfg) {
  const int n = m.size();
  if (std::holds_alternative<MemoryParams>(params))
    return simulate_memory(m, std::get<MemoryParams>(params), cfg);

  if (std::holds_alternative<BcParams>(params)) {
    const double eps = std::get<BcParams>(params).epsilon;
    return run(n, cfg, 0, [&](const std::vector<std::vector<double>>& past) {
      const auto& xk = past.back();
      std::vector<double> lx = m.apply(xk);
      std::vector<double> next(n);
      for (int i = 0; i < n; ++i) next[i] = xk[i] - eps * lx[i];
      return next;
    });
  }
  if (std::holds_alternative<GfParams>(params)) {
    const auto gains = std::get<GfParams>(params).gains;
    int k = 0;
    return run(n, cfg, 0, [&, k](const std::vector<std::vector<double>>& past) mutable {
      const double eps = gains[k % 3];
      ++k;
      const auto& xk = past.back();
      std::vector<double> lx = m.apply(xk);
      std::vector<double> next(n);
      for (int i = 0; i < n; ++i) next[i] = xk[i] - eps * lx[i];
      return next;
    });
  }
  if (std::holds_alternative<MemParams>(params)) {
    const double alpha = std::get<MemParams>(params).alpha;
    return run(n, cfg, 1, [&](const std::vector<std::vector<double>>& past) {
      const auto& xk = past.back();
      const auto& xm1 = past[past.size() - 2];
      std::vector<double> wx = m.apply(xk);
      std::vector<double> next(n);
      for (int i = 0; i < n; ++i) next[i] = (1.0 - alpha) * wx[i] + alpha * xm1[i];
      return next;
    });
  }
  if (std::holds_alternative<GMemParams>(params)) {
    const auto& g = std::get<GMemParams>(params);
    if (std::abs(g.beta1 + g.beta2 + g.beta3 - 1.0) > 1e-9)
      throw std::invalid_argument("simulate_weight_scheme: GMem betas must sum to 1 (average preservation)");
    return run(n, cfg, 1, [&](const std::vector<std::vector<double>>& past) {
      const auto& xk = past.back();
      const auto& xm1 = past[past.size() - 2];
      std::vector<double> wx = m.apply(xk);
      std::vector<double> next(n);
      for (int i = 0; i < n; ++i)
        next[i] = (1.0 - g.alpha + g.alpha * g.beta3) * wx[i] + g.alpha * g.beta2 * xk[i] +
                  g.alpha * g.beta1 * xm1[i];
      return next;
    });
  }
  if (std::holds_alternative<FirMemParams>(params)) {
    const auto& f = std::get<FirMemParams>(params);
    return run(n, cfg, 1, [&](const std::vector<std::vector<double>>& past) {
      const auto& xk = past.back();
      const auto& xm1 = past[past.size() - 2];
      std::vector<double> l0 = m.apply(xk);
      std::vector<double> l1 = m.apply(xm1);
      std::vector<double> next(n);
      for (int i = 0; i < n; ++i) next[i] = xk[i] - f.beta0 * l0[i] - f.beta1 * l1[i];
      return next;
    });
  }
  throw std::invalid_argument("simulate_weight_scheme: unsupported parameter kind");
}

double empirical_rate(const Trajectory& t, int k_lo, int k_hi) {
  const int last = static_cast<int>(t.errors.size()) - 1;
  if (k_lo < 0 || k_hi > last || k_lo >= k_hi)
    throw std::invalid_argument("empirical_rate: need 0 <= k_lo < k_hi within the trajectory");
  const double e_lo = t.errors[k_lo];
  const double e_hi = t.errors[k_hi];
  if (e_lo == 0.0 || e_hi == 0.0) return 0.0;  // already converged inside the window
  return std::pow(e_hi / e_lo, 1.0 / static_cast<double>(k_hi - k_lo));
}

std::optional<int> settling_steps(const Trajectory& t) {
  for (size_t k = 0; k < t.errors.size(); ++k)
    if (t.errors[k] <= t.tol) return static_cast<int>(k);
  return std::nullopt;
}

std::pair<int, int> default_rate_window(const Trajectory& t, bool period3) {
  // Noise floor: a safety factor above the smallest error seen, so the
  // window stays inside the clean decay.
  double min_e = 1.0;
  for (size_t k = 1; k < t.errors.size(); ++k)
    if (t.errors[k] > 0.0) min_e = std::min(min_e, t.errors[k]);
  const double floor = std::max(3.0 * min_e, 1e-15);
  int hi = 0;
  for (size_t k = 0; k < t.errors.size(); ++k)
    if (t.errors[k] >= floor) hi = static_cast<int>(k);
  hi = std::min(hi, 120);
  int lo = std::max(20, hi - 60);
  if (lo >= hi - 3) lo = std::max(3, hi - 6);
  if (period3) {
    lo += (3 - lo % 3) % 3;
    hi -= hi % 3;
  }
  if (lo >= hi) {
    lo = 0;
    hi = std::max(1, hi);
  }
  return {lo, std::min(hi, static_cast<int>(t.errors.size()) - 1)};
}

bool flagged_divergent(const Trajectory& t) {
  if (t.diverged) return true;
  if (t.settled_at) return false;
  const int last = static_cast<int>(t.errors.size()) - 1;
  if (last < 4) return false;
  const int mid = last / 2;
  if (t.errors[mid] == 0.0 || t.errors[last] == 0.0) return false;
  return empirical_rate(t, mid, last) >= 0.9999;
}

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "step,error";
  const int n = t.states.empty() ? 0 : static_cast<int>(t.states[0].size());
  for (int i = 0; i < n; ++i) out += ",x_" + std::to_string(i);
  out += "\n";
  char buf[64];
  for (size_t k = 0; k < t.states.size(); ++k) {
    out += std::to_string(k);
    std::snprintf(buf, sizeof buf, ",%.17g", t.errors[k]);
    out += buf;
    for (int i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, ",%.17g", t.states[k][i]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace consensus
