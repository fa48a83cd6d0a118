#include "toa/domain.hpp"

#include <cmath>
#include <limits>

namespace toa {

namespace {

double span_norm(const PhysicalConfig& cfg, int n) {
  return std::sqrt(2.0 * (cfg.gamma * cfg.gamma + n * n * kPi * kPi));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// phases depend on (seed, n) only, so truncations of one family share them
double hashed_phase(std::uint64_t seed, std::uint64_t n) {
  const std::uint64_t h = splitmix64(seed * 0x100000001ull + n);
  return 2.0 * kPi * (static_cast<double>(h) / 18446744073709551616.0);
}

Complex constraint_value(const ConstraintFunctional& functional, const ComplexVector& coeffs) {
  Complex acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) acc += functional.weights[i] * coeffs[i];
  return acc;
}

}  // namespace

DomainBasisFunction span_function(const PhysicalConfig& cfg, int n) {
  validate_config(cfg);
  if (n < 1) fail("IndexOutOfBasis", "span functions are indexed by n >= 1");
  const double d = span_norm(cfg, n);
  return {DomainBasisFunction::Kind::span, n, (cfg.gamma + n * kPi) / d, (n * kPi - cfg.gamma) / d};
}

DomainBasisFunction complement_function(const PhysicalConfig& cfg, int n) {
  validate_config(cfg);
  if (n < 0) fail("IndexOutOfBasis", "complement functions are indexed by n >= 0");
  if (n == 0) {
    if (cfg.periodic()) {
      fail("IndexOutOfBasis", "the n = 0 complement is the zero mode, absent at gamma = 0");
    }
    return {DomainBasisFunction::Kind::complement, 0, 1.0, 0.0};
  }
  const double d = span_norm(cfg, n);
  return {DomainBasisFunction::Kind::complement, n, (cfg.gamma - n * kPi) / d,
          (cfg.gamma + n * kPi) / d};
}

ConstraintFunctional constraint_weights(const PhysicalConfig& cfg, int n_max) {
  validate_config(cfg);
  if (n_max < 1) fail("ValidationError", "constraint needs n_max >= 1");
  ConstraintFunctional functional;
  functional.weights.resize(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    functional.weights[n - 1] = sign * n / std::sqrt(cfg.gamma * cfg.gamma + kPi * kPi * n * n);
  }
  return functional;
}

CanonicalState project_onto_domain(const ComplexVector& coeffs,
                                   const ConstraintFunctional& functional) {
  if (coeffs.size() != functional.size()) {
    fail("ValidationError", "coefficient vector and constraint weights differ in length");
  }
  const double input_norm = coeffs.norm();
  if (input_norm == 0.0) fail("ZeroStateAfterProjection", "zero input");

  const Complex overlap = constraint_value(functional, coeffs);
  const double w2 = functional.weights.squaredNorm();
  CanonicalState state;
  // already on the hyperplane (within roundoff): return unchanged, which makes
  // the projection exactly idempotent in floating point
  if (std::abs(overlap) <= 16.0 * std::numeric_limits<double>::epsilon() *
                               functional.weights.norm() * input_norm) {
    state.span_coeffs = coeffs;
    state.constraint_residual = std::abs(overlap);
    return state;
  }
  state.span_coeffs = coeffs - (overlap / w2) * functional.weights.cast<Complex>();
  if (state.span_coeffs.norm() <= 1e-12 * input_norm) {
    fail("ZeroStateAfterProjection", "input is parallel to the constraint direction");
  }
  state.constraint_residual = std::abs(constraint_value(functional, state.span_coeffs));
  return state;
}

ComplexVector domain_function_to_momentum(const PhysicalConfig&, const BasisSpec& basis,
                                          const DomainBasisFunction& f) {
  ComplexVector v = ComplexVector::Zero(basis.dim());
  if (f.n == 0) {
    v[basis.position_of(0)] = f.coeff_plus;
    return v;
  }
  v[basis.position_of(f.n)] = f.coeff_plus;
  v[basis.position_of(-f.n)] = f.coeff_minus;
  return v;
}

ComplexVector span_to_momentum(const PhysicalConfig& cfg, const BasisSpec& basis,
                               const ComplexVector& span_coeffs) {
  ComplexVector v = ComplexVector::Zero(basis.dim());
  for (Eigen::Index i = 0; i < span_coeffs.size(); ++i) {
    if (span_coeffs[i] == Complex(0.0, 0.0)) continue;
    const DomainBasisFunction f = span_function(cfg, static_cast<int>(i) + 1);
    v[basis.position_of(f.n)] += f.coeff_plus * span_coeffs[i];
    v[basis.position_of(-f.n)] += f.coeff_minus * span_coeffs[i];
  }
  return v;
}

WaveState to_wave_state(const PhysicalConfig& cfg, const BasisSpec& basis,
                        const CanonicalState& state) {
  return WaveState::make(cfg, basis, span_to_momentum(cfg, basis, state.span_coeffs));
}

double commutator_residual(const PhysicalConfig& cfg, const BasisSpec& basis,
                           const CanonicalState& state) {
  validate_config(cfg);
  if (state.span_coeffs.size() == 0 || state.span_coeffs.norm() == 0.0) {
    fail("UnprojectedState", "commutator residual of the zero state is undefined");
  }
  int largest = 0;
  for (Eigen::Index i = 0; i < state.span_coeffs.size(); ++i) {
    if (state.span_coeffs[i] != Complex(0.0, 0.0)) largest = static_cast<int>(i) + 1;
  }
  if (2 * largest > basis.n_max) {
    fail("ValidationError", "basis n_max must be at least twice the largest populated span index");
  }

  const OperatorMatrix toa = toa_matrix_analytic(cfg, basis);
  const ComplexVector v = span_to_momentum(cfg, basis, state.span_coeffs);

  RealVector energies(basis.dim());
  for (Eigen::Index a = 0; a < basis.dim(); ++a) {
    energies[a] = energy_eigenvalue(cfg, basis.indices[a]);
  }
  const ComplexVector tv = toa.entries * v;
  ComplexVector residual = energies.array() * tv.array();           // H T v
  residual -= toa.entries * (energies.array() * v.array()).matrix();  // - T H v
  residual -= Complex(0.0, cfg.hbar) * v;                           // - i hbar v
  return residual.norm() / (cfg.hbar * v.norm());
}

ComplexVector seeded_raw_coeffs(std::uint64_t seed, int count, double s) {
  if (count < 1) fail("ValidationError", "need at least one coefficient");
  if (s < 2.5) fail("ValidationError", "coefficient decay exponent must be >= 2.5");
  ComplexVector c(count);
  for (int n = 1; n <= count; ++n) {
    c[n - 1] = std::polar(std::pow(static_cast<double>(n), -s), hashed_phase(seed, n));
  }
  return c;
}

CanonicalState seeded_canonical_state(const PhysicalConfig& cfg, std::uint64_t seed, int count,
                                      double s, int window) {
  validate_config(cfg);
  ComplexVector c = seeded_raw_coeffs(seed, count, s);
  const ConstraintFunctional functional = constraint_weights(cfg, count);
  const Complex overlap = constraint_value(functional, c);
  const int k = std::min(window, count);
  double wv = 0.0;
  for (int i = 0; i < k; ++i) wv += functional.weights[i] * functional.weights[i];
  for (int i = 0; i < k; ++i) c[i] -= functional.weights[i] * overlap / wv;

  CanonicalState state;
  state.span_coeffs = std::move(c);
  state.constraint_residual = std::abs(constraint_value(functional, state.span_coeffs));
  return state;
}

CanonicalState truncate_canonical_state(const PhysicalConfig& cfg, const CanonicalState& state,
                                        int count) {
  if (count < 1 || count > state.span_coeffs.size()) {
    fail("ValidationError", "truncation length exceeds the state length");
  }
  CanonicalState out;
  out.span_coeffs = state.span_coeffs.head(count);
  out.constraint_residual =
      std::abs(constraint_value(constraint_weights(cfg, count), out.span_coeffs));
  return out;
}

}  // namespace toa
