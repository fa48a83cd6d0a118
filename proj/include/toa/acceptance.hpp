#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace toa {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

struct AcceptanceOptions {
  std::filesystem::path out_dir;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  bool write_outputs = true;
};

/// Runs the full verification battery (operator oracle equivalence, kernel
/// consistency, Hilbert-Schmidt goldens, commutator convergence, zero
/// expectations, uncertainty bound, finite-part limit, covariance violation,
/// spectral structure, determinism) and returns one result per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace toa
