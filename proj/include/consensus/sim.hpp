#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "consensus/protocols.hpp"

namespace consensus {

struct SimConfig {
  int steps = 500;
  double tol = 1e-6;          // consensus-error stop threshold
  uint64_t seed = 0;          // initial states uniform on [0,1] when x0 absent
  std::optional<std::vector<double>> x0;
};

/// States x(k) and normalized consensus errors
/// e(k) = ||x(k) - xbar|| / ||x(0) - xbar|| from one run.
struct Trajectory {
  std::vector<std::vector<double>> states;
  std::vector<double> errors;
  double xbar = 0.0;
  double tol = 0.0;                 // threshold the run was recorded with
  std::optional<int> settled_at;    // first step with error <= tol
  bool diverged = false;            // aborted after error > 1e12
};

/// M-tap memory protocol x(k+1) = ((1+theta0) I - alpha L) x(k)
/// + sum_m theta_m x(k-m), history initialized flat: x(-M) = ... = x(0).
Trajectory simulate_memory(const SymMatrix& L, const MemoryParams& p, const SimConfig& cfg);

/// The comparison schemes. `m` is the weight matrix W for Mem/GMem and the
/// Laplacian for BC/GF/FIRMem (and OptMem, which forwards to simulate_memory).
Trajectory simulate_weight_scheme(const SymMatrix& m, const ProtocolParams& params, const SimConfig& cfg);

/// Geometric slope (errors[k_hi]/errors[k_lo])^(1/(k_hi-k_lo)); returns 0 if
/// the window already converged to exact zero.
double empirical_rate(const Trajectory& t, int k_lo, int k_hi);

/// First step with error <= tol, if any.
std::optional<int> settling_steps(const Trajectory& t);

/// CSV export: header "step,error,x_0,...,x_{N-1}", 17 significant digits.
std::string trajectory_csv(const Trajectory& t);

/// Default window for rate estimation: ends where the error meets the
/// floating-point noise floor (1e-14) capped at step 120, starts after the
/// mixing transient (step 20 when the run is long enough). period3 snaps
/// both ends to multiples of 3 for the periodic-gain scheme.
std::pair<int, int> default_rate_window(const Trajectory& t, bool period3 = false);

/// Divergence as reported by the CLI: overflow abort, or no settling with a
/// non-contracting trailing error slope.
bool flagged_divergent(const Trajectory& t);

}  // namespace consensus
