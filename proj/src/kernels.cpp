#include "toa/kernels.hpp"

#include <cmath>

namespace toa {

namespace {

constexpr double kClosedFormGammaGuard = 1e-6;

void require_twisted(const PhysicalConfig& cfg, bool guard_small_gamma) {
  validate_config(cfg);
  if (cfg.periodic()) {
    fail("PeriodicGammaNotAllowed", "gamma = 0 has no closed/series kernel; use kernel_periodic");
  }
  if (guard_small_gamma && cfg.gamma < kClosedFormGammaGuard) {
    fail("ConditioningError", "closed form refused for gamma < 1e-6 (1/sin gamma amplification); "
                              "use the finite-part or periodic paths");
  }
}

void require_in_box(const PhysicalConfig& cfg, double q, double q_prime) {
  if (std::abs(q) > cfg.l || std::abs(q_prime) > cfg.l) {
    fail("PositionOutOfBox", "kernel arguments must lie in [-l, l]");
  }
}

double heaviside(double x) { return x > 0.0 ? 1.0 : (x == 0.0 ? 0.5 : 0.0); }

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// cot(g) - 1/g, cancellation-free for small g.
double cot_minus_inverse(double g) {
  if (g < 0.25) {
    const double g2 = g * g;
    // Laurent tail of cot: -g/3 - g^3/45 - 2 g^5/945 - g^7/4725
    return -g * (1.0 / 3.0 + g2 * (1.0 / 45.0 + g2 * (2.0 / 945.0 + g2 / 4725.0)));
  }
  return std::cos(g) / std::sin(g) - 1.0 / g;
}

// (1 - e^{i t}) / g with t = g*x, stable as g -> 0.
Complex one_minus_cis_over(double g, double t) {
  const double s = std::sin(0.5 * t);
  return Complex(2.0 * s * s / g, -std::sin(t) / g);
}

}  // namespace

Complex kernel_closed(const PhysicalConfig& cfg, double q, double q_prime) {
  require_twisted(cfg, /*guard_small_gamma=*/true);
  require_in_box(cfg, q, q_prime);
  const double pre = -cfg.mu * (q + q_prime) / (4.0 * cfg.hbar * std::sin(cfg.gamma));
  const Complex phase = std::polar(1.0, cfg.gamma);
  return pre * (phase * heaviside(q - q_prime) + std::conj(phase) * heaviside(q_prime - q));
}

Complex kernel_series(const PhysicalConfig& cfg, double q, double q_prime, int n_terms) {
  require_twisted(cfg, /*guard_small_gamma=*/false);
  require_in_box(cfg, q, q_prime);
  if (n_terms < 1) fail("ValidationError", "n_terms must be >= 1");
  const double x = (q - q_prime) / cfg.l;
  // symmetric pairs (n, -n) ascending in |n|; conditional convergence makes
  // this the summation order the closed form reproduces
  Complex sum = std::polar(1.0 / cfg.gamma, cfg.gamma * x);
  for (int n = 1; n <= n_terms; ++n) {
    const double a_plus = cfg.gamma + n * kPi;
    const double a_minus = cfg.gamma - n * kPi;
    sum += std::polar(1.0 / a_plus, a_plus * x) + std::polar(1.0 / a_minus, a_minus * x);
  }
  return -cfg.mu * (q + q_prime) / (4.0 * cfg.hbar) * sum;
}

Complex zero_mode_term(const PhysicalConfig& cfg, double q, double q_prime) {
  require_twisted(cfg, /*guard_small_gamma=*/false);
  require_in_box(cfg, q, q_prime);
  const double pre = -cfg.mu * (q + q_prime) / (4.0 * cfg.hbar * cfg.gamma);
  return pre * std::polar(1.0, cfg.gamma * (q - q_prime) / cfg.l);
}

Complex kernel_finite_part(const PhysicalConfig& cfg, double q, double q_prime) {
  require_twisted(cfg, /*guard_small_gamma=*/false);
  require_in_box(cfg, q, q_prime);
  const double g = cfg.gamma;
  const double x = (q - q_prime) / cfg.l;
  // closed - zero mode, regrouped so the two 1/gamma poles cancel exactly:
  //   cot g - e^{igx}/g = (cot g - 1/g) + (1 - e^{igx})/g
  const Complex bracket =
      Complex(cot_minus_inverse(g), sign0(q - q_prime)) + one_minus_cis_over(g, g * x);
  return -cfg.mu * (q + q_prime) / (4.0 * cfg.hbar) * bracket;
}

Complex kernel_periodic(const PhysicalConfig& cfg, double q, double q_prime) {
  validate_config(cfg);
  require_in_box(cfg, q, q_prime);
  const double value =
      (q + q_prime) * sign0(q - q_prime) - (q * q - q_prime * q_prime) / cfg.l;
  return Complex(0.0, -cfg.mu / (4.0 * cfg.hbar) * value);
}

}  // namespace toa
