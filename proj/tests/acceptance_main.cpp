// Acceptance suite: runs every verification criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <cstdio>

#include "toa/acceptance.hpp"

int main() {
  toa::AcceptanceOptions options;
  options.out_dir = "acceptance_out";
  options.seed = 42;
  options.workers = 1;

  const std::vector<toa::CriterionResult> results = toa::run_acceptance(options);
  for (const auto& r : results) {
    std::printf("%s criterion %d: %s (%s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.details.c_str());
  }
  const bool ok = toa::all_passed(results);
  std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
