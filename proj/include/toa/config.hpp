#pragma once

#include "toa/common.hpp"

namespace toa {

/// Box of half-width l centred at the origin, kinetic particle of mass mu,
/// quasi-periodic boundary phase gamma: phi(-l) = exp(-2i gamma) phi(l).
struct PhysicalConfig {
  double l = 1.0;
  double mu = 1.0;
  double hbar = 1.0;
  double gamma = 0.0;

  bool periodic() const noexcept { return gamma == 0.0; }
};

enum class BoundaryKind { twisted, periodic };

/// Validates all invariants (l, mu, hbar > 0; gamma in [0,1)) and reports
/// whether the periodic path (gamma = 0) applies.
BoundaryKind validate_config(const PhysicalConfig& cfg);

}  // namespace toa
