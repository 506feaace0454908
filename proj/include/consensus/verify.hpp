#pragma once

#include <string>
#include <vector>

namespace consensus::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Individual checks. Each is deterministic (fixed seeds) and pins its own
// tolerances; table_tol only affects the rate-table comparisons and defaults
// to 1e-3 (RATE_TOL environment variable overrides it in the CLI).
CheckResult check_table2_deterministic(double table_tol);
CheckResult check_table2_published_spectra(double table_tol);
CheckResult check_example1();
CheckResult check_theorem1_equivalence();
CheckResult check_theorem2_corners();
CheckResult check_optimality_grid();
CheckResult check_lemma4_identity();
CheckResult check_lemma3_invariance();
CheckResult check_routh_oracle();
CheckResult check_kharitonov_sampling();
CheckResult check_lemma5_margin();
CheckResult check_worstcase_bound();
CheckResult check_sim_vs_theory();
CheckResult check_corollary2_remark3();

/// Suites the CLI exposes: table2, example1, theorem1, lemma4, routh,
/// kharitonov, margin, worstcase, all.
bool is_known_suite(const std::string& suite);
std::vector<CheckResult> run_suite(const std::string& suite, double table_tol);

/// RATE_TOL environment override for the table comparisons; 1e-3 default.
double table_tolerance_from_env();

}  // namespace consensus::verify
