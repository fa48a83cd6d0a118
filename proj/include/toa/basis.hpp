#pragma once

#include <vector>

#include "toa/config.hpp"

namespace toa {

/// Symmetric truncation of the momentum eigenbasis. The index set is
/// {-n_max..n_max}; the n = 0 mode is excluded when gamma = 0 because the
/// periodic momentum operator annihilates it.
struct BasisSpec {
  int n_max = 0;
  std::vector<int> indices;  // ascending

  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(indices.size()); }
  bool contains(int n) const;
  Eigen::Index position_of(int n) const;  // throws IndexOutOfBasis

  static BasisSpec make(const PhysicalConfig& cfg, int n_max);
};

struct MomentumEigenstate {
  int n;
  double p;       // hbar (gamma + n pi) / l
  double energy;  // p^2 / (2 mu)
};

double momentum_eigenvalue(const PhysicalConfig& cfg, int n);
double energy_eigenvalue(const PhysicalConfig& cfg, int n);
MomentumEigenstate momentum_eigenstate(const PhysicalConfig& cfg, int n);

/// phi_n(q) = (2l)^{-1/2} exp(i (gamma + n pi) q / l); |q| <= l.
Complex eval_eigenfunction(const PhysicalConfig& cfg, int n, double q);

}  // namespace toa
