#pragma once

#include "toa/config.hpp"

namespace toa {

// Kernel conventions used throughout: Heaviside H(0) = 1/2, sgn(0) = 0,
// series summed in symmetric pairs (n, -n) ascending in |n|. These are the
// unique diagonal choices keeping every kernel Hermitian.

struct KernelPoint {
  double q;
  double q_prime;
  Complex value;
};

/// Closed form of the twisted kernel,
///   T_gamma(q,q') = -mu (q+q') (e^{+i gamma} H(q-q') + e^{-i gamma} H(q'-q))
///                   / (4 hbar sin gamma),  0 < gamma < 1.
/// Refused below gamma = 1e-6 (1/sin amplification); use the finite-part or
/// periodic paths there.
Complex kernel_closed(const PhysicalConfig& cfg, double q, double q_prime);

/// Symmetric partial sum of the spectral series
///   -mu (q+q') / (4 hbar) * sum_n exp(i (gamma+n pi)(q-q')/l) / (gamma+n pi),
/// n = -n_terms..n_terms. Converges to kernel_closed for q != q'.
Complex kernel_series(const PhysicalConfig& cfg, double q, double q_prime, int n_terms);

/// n = 0 term of the series: -mu (q+q') exp(i gamma (q-q')/l) / (4 hbar gamma).
/// Diverges as 1/gamma; this is the contribution removed to form the finite part.
Complex zero_mode_term(const PhysicalConfig& cfg, double q, double q_prime);

/// kernel_closed - zero_mode_term, evaluated in a cancellation-free form so it
/// stays accurate down to gamma -> 0+, where it tends to kernel_periodic.
Complex kernel_finite_part(const PhysicalConfig& cfg, double q, double q_prime);

/// Periodic kernel T_0(q,q') = mu ((q+q') sgn(q-q') - (q^2-q'^2)/l) / (4 i hbar).
/// Purely imaginary; defined for every gamma-independent periodic state.
Complex kernel_periodic(const PhysicalConfig& cfg, double q, double q_prime);

}  // namespace toa
