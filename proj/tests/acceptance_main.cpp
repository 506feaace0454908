// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances are pinned in the checks themselves.

#include <cstdio>
#include <exception>

#include "consensus/verify.hpp"

int main() {
  using namespace consensus::verify;
  struct Criterion {
    const char* id;
    std::vector<CheckResult> (*run)();
  };
  const Criterion criteria[] = {
      {"C1  table2-deterministic", [] { return std::vector{check_table2_deterministic(1e-3)}; }},
      {"C2  table2-published-spectra", [] { return std::vector{check_table2_published_spectra(1e-3)}; }},
      {"C3  example1-phi3", [] { return std::vector{check_example1()}; }},
      {"C4  theorem1-equivalence", [] { return std::vector{check_theorem1_equivalence()}; }},
      {"C5  theorem2-corners", [] { return std::vector{check_theorem2_corners()}; }},
      {"C6  optimality-grid", [] { return std::vector{check_optimality_grid()}; }},
      {"C7  lemma4-identity", [] { return std::vector{check_lemma4_identity()}; }},
      {"C8  lemma3-invariance", [] { return std::vector{check_lemma3_invariance()}; }},
      {"C9  routh-kharitonov", [] { return std::vector{check_routh_oracle(), check_kharitonov_sampling()}; }},
      {"C10 lemma5-worstcase", [] { return std::vector{check_lemma5_margin(), check_worstcase_bound()}; }},
      {"C11 sim-vs-theory", [] { return std::vector{check_sim_vs_theory()}; }},
      {"C12 corollary2-remark3", [] { return std::vector{check_corollary2_remark3()}; }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = true;
    std::string detail;
    try {
      for (const auto& res : c.run()) {
        ok &= res.passed;
        if (!detail.empty()) detail += "; ";
        detail += res.detail;
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %-30s %s\n", ok ? "PASS" : "FAIL", c.id, detail.c_str());
    failures += !ok;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
