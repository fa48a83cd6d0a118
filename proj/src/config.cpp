#include "toa/config.hpp"

namespace toa {

BoundaryKind validate_config(const PhysicalConfig& cfg) {
  if (!(cfg.l > 0.0) || !(cfg.mu > 0.0) || !(cfg.hbar > 0.0)) {
    fail("NonPositiveScale", "l, mu and hbar must all be positive (l=" + std::to_string(cfg.l) +
                                 ", mu=" + std::to_string(cfg.mu) +
                                 ", hbar=" + std::to_string(cfg.hbar) + ")");
  }
  if (!(cfg.gamma >= 0.0) || cfg.gamma >= 1.0) {
    fail("GammaOutOfRange", "gamma must lie in [0, 1), got " + std::to_string(cfg.gamma));
  }
  return cfg.periodic() ? BoundaryKind::periodic : BoundaryKind::twisted;
}

}  // namespace toa
