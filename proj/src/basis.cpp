#include "toa/basis.hpp"

#include <algorithm>
#include <cmath>

namespace toa {

BasisSpec BasisSpec::make(const PhysicalConfig& cfg, int n_max) {
  validate_config(cfg);
  if (n_max < 1) fail("IndexOutOfBasis", "n_max must be >= 1, got " + std::to_string(n_max));
  BasisSpec spec;
  spec.n_max = n_max;
  spec.indices.reserve(2 * static_cast<std::size_t>(n_max) + 1);
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0 && cfg.periodic()) continue;  // zero mode: no arrival
    spec.indices.push_back(n);
  }
  return spec;
}

bool BasisSpec::contains(int n) const {
  return std::binary_search(indices.begin(), indices.end(), n);
}

Eigen::Index BasisSpec::position_of(int n) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), n);
  if (it == indices.end() || *it != n) {
    fail("IndexOutOfBasis", "index " + std::to_string(n) + " not in the basis");
  }
  return static_cast<Eigen::Index>(it - indices.begin());
}

double momentum_eigenvalue(const PhysicalConfig& cfg, int n) {
  return cfg.hbar * (cfg.gamma + n * kPi) / cfg.l;
}

double energy_eigenvalue(const PhysicalConfig& cfg, int n) {
  const double p = momentum_eigenvalue(cfg, n);
  return p * p / (2.0 * cfg.mu);
}

MomentumEigenstate momentum_eigenstate(const PhysicalConfig& cfg, int n) {
  return {n, momentum_eigenvalue(cfg, n), energy_eigenvalue(cfg, n)};
}

Complex eval_eigenfunction(const PhysicalConfig& cfg, int n, double q) {
  if (std::abs(q) > cfg.l) {
    fail("PositionOutOfBox", "q = " + std::to_string(q) + " outside [-l, l]");
  }
  const double phase = (cfg.gamma + n * kPi) * q / cfg.l;
  return std::polar(1.0 / std::sqrt(2.0 * cfg.l), phase);
}

}  // namespace toa
