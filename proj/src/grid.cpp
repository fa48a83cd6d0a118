#include "toa/grid.hpp"

#include <cmath>

namespace toa {

GridSpec GridSpec::simpson(const PhysicalConfig& cfg, int m_points) {
  validate_config(cfg);
  if (m_points < 17 || m_points % 2 == 0) {
    fail("ValidationError",
         "m_points must be odd and >= 17 for composite Simpson, got " + std::to_string(m_points));
  }
  GridSpec grid;
  const double h = 2.0 * cfg.l / (m_points - 1);
  grid.nodes.resize(m_points);
  grid.weights.resize(m_points);
  for (int j = 0; j < m_points; ++j) {
    grid.nodes[j] = -cfg.l + h * j;
    const double simpson = (j == 0 || j == m_points - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    grid.weights[j] = simpson * h / 3.0;
  }
  grid.nodes[m_points - 1] = cfg.l;  // exact endpoint
  return grid;
}

WaveState WaveState::make(const PhysicalConfig& cfg, const BasisSpec& basis, ComplexVector coeffs) {
  if (coeffs.size() != basis.dim()) {
    fail("MixedRepresentation", "coefficient vector does not match the basis dimension");
  }
  WaveState state;
  state.config = cfg;
  state.basis = basis;
  state.coeffs = std::move(coeffs);
  state.normalized = std::abs(state.norm_squared() - 1.0) < 1e-12;
  return state;
}

WaveState WaveState::normalize() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) fail("UnnormalizedState", "cannot normalize the zero state");
  WaveState out = *this;
  out.coeffs /= std::sqrt(n2);
  out.normalized = true;
  return out;
}

namespace {

bool same_config(const PhysicalConfig& a, const PhysicalConfig& b) {
  return a.l == b.l && a.mu == b.mu && a.hbar == b.hbar && a.gamma == b.gamma;
}

}  // namespace

Complex inner_product(const WaveState& a, const WaveState& b) {
  if (!same_config(a.config, b.config) || a.basis.indices != b.basis.indices) {
    fail("MixedRepresentation", "states live in different bases or configurations");
  }
  return a.coeffs.dot(b.coeffs);  // Eigen dot conjugates the first argument
}

Complex inner_product(const GridSpec& grid, const ComplexVector& fa, const ComplexVector& fb) {
  if (fa.size() != grid.size() || fb.size() != grid.size()) {
    fail("MixedRepresentation", "sample vectors do not match the grid size");
  }
  Complex acc(0.0, 0.0);
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    acc += grid.weights[j] * std::conj(fa[j]) * fb[j];
  }
  return acc;
}

ComplexVector synthesize(const WaveState& state, const RealVector& nodes) {
  ComplexVector values = ComplexVector::Zero(nodes.size());
  for (Eigen::Index j = 0; j < nodes.size(); ++j) {
    Complex v(0.0, 0.0);
    for (Eigen::Index k = 0; k < state.basis.dim(); ++k) {
      v += state.coeffs[k] * eval_eigenfunction(state.config, state.basis.indices[k], nodes[j]);
    }
    values[j] = v;
  }
  return values;
}

}  // namespace toa
