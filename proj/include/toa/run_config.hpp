#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toa/config.hpp"
#include "toa/io.hpp"

namespace toa {

/// Fully validated experiment configuration with every default filled in.
struct RunConfig {
  PhysicalConfig physical;  // gamma is required in the source document
  int n_max = 64;
  int panel_order = 64;
  int m_points = 513;
  std::uint64_t seed = 42;
  std::string output_dir = "toa_out";

  // subcommand parameters
  std::string selector = "closed";
  int n_terms = 200;
  int grid_points = 21;
  int state_count = 20;
  double s = 3.0;
  std::vector<double> alphas = {0.5, 1.0, 2.0};
  std::vector<double> gammas = {1e-2, 1e-3, 1e-4};
  std::vector<int> n_max_sequence = {32, 64, 128, 256};

  Json effective() const;
  std::string config_hash() const;
};

/// Parses and validates a JSON document. Unknown keys are rejected; error
/// messages name the offending key.
RunConfig parse_config(const std::string& text);

}  // namespace toa
