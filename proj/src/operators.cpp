#include "toa/operators.hpp"

#include <cmath>

#include "toa/quadrature.hpp"

namespace toa {

namespace {

constexpr double kHermitianTolerance = 1e-12;

double parity_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// q_mn = -i l (-1)^{n-m} / ((n-m) pi), gamma-independent.
Complex position_entry(const PhysicalConfig& cfg, int m, int n) {
  if (m == n) return Complex(0.0, 0.0);
  return Complex(0.0, -cfg.l * parity_sign(n - m) / ((n - m) * kPi));
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

OperatorMatrix OperatorMatrix::make(ComplexMatrix entries, BasisSpec basis, std::string label,
                                    bool expect_hermitian) {
  if (entries.rows() != entries.cols() || entries.rows() != basis.dim()) {
    fail("ValidationError", "operator matrix dimension does not match its basis");
  }
  if (expect_hermitian) {
    const double defect = hermiticity_defect(entries);
    if (defect >= kHermitianTolerance) {
      fail("NonHermitianInput",
           label + ": Hermiticity defect " + std::to_string(defect) + " exceeds 1e-12");
    }
  }
  OperatorMatrix op;
  op.entries = std::move(entries);
  op.basis = std::move(basis);
  op.hermitian = expect_hermitian;
  op.label = std::move(label);
  return op;
}

OperatorMatrix position_matrix(const PhysicalConfig& cfg, const BasisSpec& basis) {
  validate_config(cfg);
  const Eigen::Index d = basis.dim();
  ComplexMatrix q(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      q(a, b) = position_entry(cfg, basis.indices[a], basis.indices[b]);
    }
  }
  return OperatorMatrix::make(std::move(q), basis, "q", true);
}

OperatorMatrix momentum_matrix(const PhysicalConfig& cfg, const BasisSpec& basis) {
  validate_config(cfg);
  const Eigen::Index d = basis.dim();
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    p(a, a) = momentum_eigenvalue(cfg, basis.indices[a]);
  }
  return OperatorMatrix::make(std::move(p), basis, "p_gamma", true);
}

OperatorMatrix momentum_inverse_matrix(const PhysicalConfig& cfg, const BasisSpec& basis) {
  validate_config(cfg);
  const Eigen::Index d = basis.dim();
  ComplexMatrix inv = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const double p = momentum_eigenvalue(cfg, basis.indices[a]);
    if (p == 0.0) {
      fail("ZeroModePresent", "momentum inverse requested with the n = 0 zero mode in the basis");
    }
    inv(a, a) = 1.0 / p;
  }
  return OperatorMatrix::make(std::move(inv), basis, "p_gamma_inv", true);
}

OperatorMatrix hamiltonian_matrix(const PhysicalConfig& cfg, const BasisSpec& basis) {
  validate_config(cfg);
  const Eigen::Index d = basis.dim();
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    h(a, a) = energy_eigenvalue(cfg, basis.indices[a]);
  }
  return OperatorMatrix::make(std::move(h), basis, cfg.periodic() ? "H_0" : "H_gamma", true);
}

OperatorMatrix toa_matrix_analytic(const PhysicalConfig& cfg, const BasisSpec& basis) {
  validate_config(cfg);
  const Eigen::Index d = basis.dim();
  ComplexMatrix t(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const double pm = momentum_eigenvalue(cfg, basis.indices[a]);
    if (pm == 0.0) fail("ZeroModePresent", "TOA matrix needs an invertible momentum spectrum");
    for (Eigen::Index b = 0; b < d; ++b) {
      const double pn = momentum_eigenvalue(cfg, basis.indices[b]);
      t(a, b) = -(cfg.mu / 2.0) * position_entry(cfg, basis.indices[a], basis.indices[b]) *
                (1.0 / pm + 1.0 / pn);
    }
  }
  return OperatorMatrix::make(std::move(t), basis, cfg.periodic() ? "T_0" : "T_gamma", true);
}

QuadratureMatrixResult toa_matrix_quadrature(const PhysicalConfig& cfg, const BasisSpec& basis,
                                             KernelPath path, int panel_order, unsigned workers) {
  validate_config(cfg);
  if (panel_order < 8) fail("ValidationError", "panel_order must be >= 8");
  if (panel_order > 256) fail("QuadratureBudgetExceeded", "panel_order capped at 256");
  if (path == KernelPath::closed) {
    if (cfg.periodic()) fail("PeriodicGammaNotAllowed", "closed kernel undefined at gamma = 0");
    if (cfg.gamma < 1e-6) fail("ConditioningError", "closed kernel refused for gamma < 1e-6");
  }

  const GaussLegendre& rule = GaussLegendre::rule(panel_order);
  const Eigen::Index d = basis.dim();
  const double geff = path == KernelPath::periodic ? 0.0 : cfg.gamma;
  const double norm = 1.0 / (2.0 * cfg.l);

  auto kernel = [&](double q, double q_prime) {
    return path == KernelPath::closed ? kernel_closed(cfg, q, q_prime)
                                      : kernel_periodic(cfg, q, q_prime);
  };

  // entries computed independently; no shared accumulation
  ComplexMatrix raw(d, d);
  parallel_for_index(d * d, workers, [&](Eigen::Index flat) {
    const Eigen::Index a = flat / d;
    const Eigen::Index b = flat % d;
    const double km = (geff + basis.indices[a] * kPi) / cfg.l;
    const double kn = (geff + basis.indices[b] * kPi) / cfg.l;
    auto integrand = [&](double q, double q_prime) {
      const Complex bra = std::polar(norm, -km * q);
      const Complex ket = std::polar(1.0, kn * q_prime);
      return bra * kernel(q, q_prime) * ket;
    };
    raw(a, b) = integrate_square_split(cfg.l, rule, integrand);
  });

  const double defect = hermiticity_defect(raw);
  ComplexMatrix sym = 0.5 * (raw + raw.adjoint().eval());
  QuadratureMatrixResult result;
  result.hermitization_defect = defect;
  result.op = OperatorMatrix::make(std::move(sym), basis,
                                   path == KernelPath::periodic ? "T_0" : "T_gamma", true);
  return result;
}

namespace {

// fourth-order first derivative on a uniform grid
ComplexVector derivative4(const ComplexVector& f, double h) {
  const Eigen::Index n = f.size();
  ComplexVector df(n);
  for (Eigen::Index j = 2; j + 2 < n; ++j) {
    df[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * h);
  }
  df[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
  df[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
  df[n - 1] =
      (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) /
      (12.0 * h);
  df[n - 2] =
      (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
  return df;
}

}  // namespace

CcrResidualReport ccr_position_momentum_residual(const PhysicalConfig& cfg, const GridSpec& grid,
                                                 const ComplexVector& phi,
                                                 const ComplexVector& dphi) {
  validate_config(cfg);
  const Eigen::Index n = grid.size();
  if (phi.size() != n || dphi.size() != n || n < 17) {
    fail("NonSmoothInput", "need matching sample vectors on a grid of at least 17 points");
  }
  if (!phi.allFinite() || !dphi.allFinite()) {
    fail("NonSmoothInput", "samples must be finite");
  }

  CcrResidualReport report;
  const double amplitude = phi.cwiseAbs().maxCoeff();
  if (amplitude == 0.0) {
    report.zero_input = true;  // identity holds trivially; normalization undefined
    return report;
  }

  const double h = grid.nodes[1] - grid.nodes[0];
  ComplexVector q_phi(n);
  for (Eigen::Index j = 0; j < n; ++j) q_phi[j] = grid.nodes[j] * phi[j];
  const ComplexVector d_q_phi = derivative4(q_phi, h);

  const Complex minus_i_hbar(0.0, -cfg.hbar);
  double max_residual = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex lhs = grid.nodes[j] * (minus_i_hbar * dphi[j]);
    const Complex rhs = minus_i_hbar * d_q_phi[j];
    const Complex residual = lhs - rhs - Complex(0.0, cfg.hbar) * phi[j];
    max_residual = std::max(max_residual, std::abs(residual));
  }
  report.residual = max_residual;

  const double boundary = std::max(std::abs(phi[0]), std::abs(phi[n - 1]));
  report.domain_violation = boundary > 1e-8 * amplitude;
  return report;
}

}  // namespace toa
