#pragma once

#include "toa/operators.hpp"

namespace toa {

/// One of the canonical-domain spanning (or complement) functions, stored as
/// its two-term expansion over the momentum eigenfunctions phi_{+n}, phi_{-n}.
/// Phases are fixed so both coefficients are real; the complement with n = 0
/// is the single eigenfunction phi_0 (twisted case only).
struct DomainBasisFunction {
  enum class Kind { span, complement };
  Kind kind;
  int n;
  double coeff_plus;
  double coeff_minus;
};

DomainBasisFunction span_function(const PhysicalConfig& cfg, int n);        // n >= 1
DomainBasisFunction complement_function(const PhysicalConfig& cfg, int n);  // n >= 0

/// Constraint functional of the canonical domain:
/// w_n = (-1)^n n / sqrt(gamma^2 + pi^2 n^2), n = 1..n_max. A span-coefficient
/// vector c lies in the domain iff sum_n w_n c_n = 0.
struct ConstraintFunctional {
  RealVector weights;
  Eigen::Index size() const noexcept { return weights.size(); }
};

ConstraintFunctional constraint_weights(const PhysicalConfig& cfg, int n_max);

/// Coefficients over the span functions, n = 1..N.
struct CanonicalState {
  ComplexVector span_coeffs;
  double constraint_residual = 0.0;  // |sum w_n c_n| against the same-length weights
};

/// Orthogonal projection onto the hyperplane {sum w_n c_n = 0}. Idempotent:
/// inputs already on the hyperplane (within roundoff) are returned unchanged.
CanonicalState project_onto_domain(const ComplexVector& coeffs, const ConstraintFunctional& functional);

/// Momentum-basis expansion of a span-coefficient vector.
ComplexVector span_to_momentum(const PhysicalConfig& cfg, const BasisSpec& basis,
                               const ComplexVector& span_coeffs);
ComplexVector domain_function_to_momentum(const PhysicalConfig& cfg, const BasisSpec& basis,
                                          const DomainBasisFunction& f);
WaveState to_wave_state(const PhysicalConfig& cfg, const BasisSpec& basis, const CanonicalState& state);

/// Relative norm of ([H, T] - i hbar) applied to the state, with both
/// operators represented on the given basis. The basis must hold twice the
/// largest populated span index.
double commutator_residual(const PhysicalConfig& cfg, const BasisSpec& basis,
                           const CanonicalState& state);

// -- Seeded test-state family --------------------------------------------
//
// Raw coefficients c_n = n^{-s} exp(i theta_n) with per-index hashed phases,
// so the family is a fixed infinite sequence: truncations at different N
// share coefficients. The constraint correction is confined to the first
// `window` indices, which keeps the |c_n| <= C n^{-s} decay of the tail and
// still lands the state exactly on the constraint hyperplane of its length.

ComplexVector seeded_raw_coeffs(std::uint64_t seed, int count, double s);

CanonicalState seeded_canonical_state(const PhysicalConfig& cfg, std::uint64_t seed, int count,
                                      double s, int window = 16);

/// First `count` span coefficients of a longer state, with the constraint
/// residual recomputed against the truncated weights.
CanonicalState truncate_canonical_state(const PhysicalConfig& cfg, const CanonicalState& state,
                                        int count);

}  // namespace toa
