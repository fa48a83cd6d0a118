#pragma once

#include "toa/basis.hpp"

namespace toa {

/// Uniform grid on [-l, l] with composite Simpson weights (m_points odd).
struct GridSpec {
  RealVector nodes;
  RealVector weights;

  Eigen::Index size() const noexcept { return nodes.size(); }

  static GridSpec simpson(const PhysicalConfig& cfg, int m_points);
};

/// State as coefficients over the momentum eigenbasis. The coefficient
/// representation is authoritative; grid synthesis is derived from it.
struct WaveState {
  PhysicalConfig config;
  BasisSpec basis;
  ComplexVector coeffs;
  bool normalized = false;

  double norm_squared() const { return coeffs.squaredNorm(); }
  static WaveState make(const PhysicalConfig& cfg, const BasisSpec& basis, ComplexVector coeffs);
  WaveState normalize() const;
};

/// Conjugate-linear in the first argument.
Complex inner_product(const WaveState& a, const WaveState& b);
Complex inner_product(const GridSpec& grid, const ComplexVector& fa, const ComplexVector& fb);

ComplexVector synthesize(const WaveState& state, const RealVector& nodes);

}  // namespace toa
