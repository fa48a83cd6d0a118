#include "toa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "toa/kernels.hpp"
#include "toa/quadrature.hpp"

namespace toa {

namespace {

void fix_column_phase(ComplexMatrix& vectors, Eigen::Index col) {
  const Eigen::Index rows = vectors.rows();
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Complex v = vectors(r, col);
    if (std::abs(v) > 1e-12) {
      vectors.col(col) *= std::conj(v) / std::abs(v);
      return;
    }
  }
}

bool column_less(const ComplexMatrix& m, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Complex x = m(r, a);
    const Complex y = m(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

SpectrumReport spectral_decomposition(const OperatorMatrix& op) {
  if (!op.hermitian) fail("NonHermitianInput", "spectral decomposition needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.entries);
  if (solver.info() != Eigen::Success) fail("ValidationError", "eigendecomposition failed");

  SpectrumReport report;
  report.eigenvalues = solver.eigenvalues();
  report.eigenvectors = solver.eigenvectors();
  const Eigen::Index d = report.eigenvalues.size();

  for (Eigen::Index k = 0; k < d; ++k) fix_column_phase(report.eigenvectors, k);

  // reproducible order inside degenerate clusters: lexicographic on the
  // phase-fixed columns, eigenvalues carried along
  const double scale = std::max(1.0, report.eigenvalues.cwiseAbs().maxCoeff());
  Eigen::Index lo = 0;
  while (lo < d) {
    Eigen::Index hi = lo + 1;
    while (hi < d && report.eigenvalues[hi] - report.eigenvalues[hi - 1] <= 1e-12 * scale) ++hi;
    if (hi - lo > 1) {
      std::vector<Eigen::Index> order(static_cast<std::size_t>(hi - lo));
      std::iota(order.begin(), order.end(), lo);
      std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return column_less(report.eigenvectors, a, b);
      });
      ComplexMatrix cols(d, hi - lo);
      RealVector vals(hi - lo);
      for (Eigen::Index k = 0; k < hi - lo; ++k) {
        cols.col(k) = report.eigenvectors.col(order[static_cast<std::size_t>(k)]);
        vals[k] = report.eigenvalues[order[static_cast<std::size_t>(k)]];
      }
      report.eigenvectors.middleCols(lo, hi - lo) = cols;
      report.eigenvalues.segment(lo, hi - lo) = vals;
    }
    lo = hi;
  }

  double pairing = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    pairing = std::max(pairing, std::abs(report.eigenvalues[k] + report.eigenvalues[d - 1 - k]));
  }
  report.pairing_defect = pairing;
  report.eigenvalue_sum = report.eigenvalues.sum();
  report.reconstruction_defect =
      (report.eigenvectors * report.eigenvalues.asDiagonal() * report.eigenvectors.adjoint() -
       op.entries)
          .cwiseAbs()
          .maxCoeff();
  return report;
}

double toa_expectation(const OperatorMatrix& op, const WaveState& state) {
  if (state.coeffs.size() != op.entries.rows()) {
    fail("MixedRepresentation", "state does not match the operator basis");
  }
  if (std::abs(state.norm_squared() - 1.0) > 1e-12) {
    fail("UnnormalizedState", "expectation values need a normalized state");
  }
  const Complex value = state.coeffs.dot(op.entries * state.coeffs);
  return value.real();
}

ZeroExpectationReport zero_expectation_suite(const PhysicalConfig& cfg, int n_limit,
                                             int basis_n_max) {
  validate_config(cfg);
  if (2 * n_limit > basis_n_max) fail("ValidationError", "basis too small for the requested suite");
  const BasisSpec basis = BasisSpec::make(cfg, basis_n_max);
  const OperatorMatrix toa = toa_matrix_analytic(cfg, basis);

  ZeroExpectationReport report;
  auto add = [&](const char* kind, const DomainBasisFunction& f) {
    const WaveState state = WaveState::make(cfg, basis, domain_function_to_momentum(cfg, basis, f));
    const double value = toa_expectation(toa, state);
    report.entries.push_back({kind, f.n, value});
    report.max_abs = std::max(report.max_abs, std::abs(value));
  };
  for (int n = 1; n <= n_limit; ++n) add("span", span_function(cfg, n));
  if (!cfg.periodic()) add("complement", complement_function(cfg, 0));
  for (int n = 1; n <= n_limit; ++n) add("complement", complement_function(cfg, n));
  return report;
}

namespace {

// components of the state over span functions, the complements and, for
// gamma != 0, the zero-index complement
struct DomainSplit {
  ComplexVector span;
  double complement_mass = 0.0;
  double constraint_residual = 0.0;
};

DomainSplit split_into_domain(const PhysicalConfig& cfg, const BasisSpec& basis,
                              const ComplexVector& coeffs) {
  DomainSplit split;
  split.span = ComplexVector::Zero(basis.n_max);
  for (int n = 1; n <= basis.n_max; ++n) {
    const DomainBasisFunction s = span_function(cfg, n);
    const DomainBasisFunction c = complement_function(cfg, n);
    const Complex plus = coeffs[basis.position_of(n)];
    const Complex minus = coeffs[basis.position_of(-n)];
    split.span[n - 1] = s.coeff_plus * plus + s.coeff_minus * minus;
    split.complement_mass += std::norm(c.coeff_plus * plus + c.coeff_minus * minus);
  }
  if (!cfg.periodic()) split.complement_mass += std::norm(coeffs[basis.position_of(0)]);
  const ConstraintFunctional functional = constraint_weights(cfg, basis.n_max);
  Complex overlap(0.0, 0.0);
  for (int n = 1; n <= basis.n_max; ++n) overlap += functional.weights[n - 1] * split.span[n - 1];
  split.constraint_residual = std::abs(overlap);
  return split;
}

}  // namespace

UncertaintyReport uncertainty_product(const PhysicalConfig& cfg, const OperatorMatrix& hamiltonian,
                                      const OperatorMatrix& toa, const WaveState& state,
                                      std::string state_id) {
  if (std::abs(state.norm_squared() - 1.0) > 1e-12) {
    fail("UnnormalizedState", "uncertainty products need a normalized state");
  }
  UncertaintyReport report;
  report.state_id = std::move(state_id);

  const ComplexVector tv = toa.entries * state.coeffs;
  const double mean_t = state.coeffs.dot(tv).real();
  const double second_t = tv.squaredNorm();
  report.delta_t = std::sqrt(std::max(0.0, second_t - mean_t * mean_t));

  const Eigen::Index d = state.coeffs.size();
  int populated = 0;
  const double amplitude_floor = 1e-14 * state.coeffs.norm();
  for (Eigen::Index a = 0; a < d; ++a) {
    if (std::abs(state.coeffs[a]) > amplitude_floor) {
      populated = std::max(populated, std::abs(state.basis.indices[a]));
    }
  }
  double mean_e = 0.0, second_e = 0.0, edge_second_e = 0.0;
  for (Eigen::Index a = 0; a < d; ++a) {
    const double e = hamiltonian.entries(a, a).real();
    const double weight = std::norm(state.coeffs[a]);
    mean_e += e * weight;
    second_e += e * e * weight;
    if (std::abs(state.basis.indices[a]) > 0.9 * populated) edge_second_e += e * e * weight;
  }
  report.delta_e = std::sqrt(std::max(0.0, second_e - mean_e * mean_e));
  report.product = report.delta_t * report.delta_e;
  // the top decile of the populated index range carrying a quarter of <H^2>
  // means the second moment is truncation-dominated, not a property of the
  // state; a handful of populated modes is an exact sum, never flagged
  report.divergent_moment = populated >= 10 && second_e > 0.0 && edge_second_e > 0.25 * second_e;

  const DomainSplit split = split_into_domain(cfg, state.basis, state.coeffs);
  report.in_domain =
      split.complement_mass < 1e-10 && split.constraint_residual < 1e-8 * split.span.norm();
  return report;
}

double hs_norm(const PhysicalConfig& cfg, KernelPath path, int panel_order) {
  validate_config(cfg);
  if (path == KernelPath::closed) {
    if (cfg.periodic()) fail("PeriodicGammaNotAllowed", "closed kernel undefined at gamma = 0");
    if (cfg.gamma < 1e-6) fail("ConditioningError", "closed kernel refused for gamma < 1e-6");
  }
  const GaussLegendre& rule = GaussLegendre::rule(panel_order);
  auto square = [&](double q, double q_prime) {
    const Complex k = path == KernelPath::closed ? kernel_closed(cfg, q, q_prime)
                                                 : kernel_periodic(cfg, q, q_prime);
    return Complex(std::norm(k), 0.0);
  };
  return std::sqrt(integrate_square_split(cfg.l, rule, square).real());
}

CovarianceReport covariance_violation(const PhysicalConfig& cfg, const OperatorMatrix& hamiltonian,
                                      const OperatorMatrix& toa, double alpha) {
  if (!hamiltonian.hermitian || !toa.hermitian) {
    fail("NonHermitianInput", "covariance check needs Hermitian H and T");
  }
  const Eigen::Index d = toa.entries.rows();
  ComplexVector u(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    u[a] = std::polar(1.0, alpha * hamiltonian.entries(a, a).real() / cfg.hbar);
  }
  ComplexMatrix shifted(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      shifted(a, b) = std::conj(u[a]) * toa.entries(a, b) * u[b];  // U^dagger T U
    }
  }
  const OperatorMatrix conjugated =
      OperatorMatrix::make(std::move(shifted), toa.basis, toa.label + "_conjugated", true);

  const RealVector eig_t = spectral_decomposition(toa).eigenvalues;
  const RealVector eig_c = spectral_decomposition(conjugated).eigenvalues;

  CovarianceReport report;
  report.alpha = alpha;
  report.spectrum_preservation_defect = (eig_c - eig_t).cwiseAbs().maxCoeff();
  // distance between equally-ranked eigenvalues and the Weyl-shifted spectrum;
  // covariance would force this to vanish
  report.weyl_shift_defect = (eig_c - (eig_t.array() + alpha).matrix()).cwiseAbs().minCoeff();
  return report;
}

LimitStudy limit_study(const PhysicalConfig& cfg_base, const std::vector<double>& gammas,
                       int grid_points) {
  if (gammas.empty()) fail("ValidationError", "limit study needs at least one gamma");
  if (grid_points < 2) fail("ValidationError", "limit study needs at least two grid points");
  LimitStudy study;
  PhysicalConfig periodic_cfg = cfg_base;
  periodic_cfg.gamma = 0.0;
  RealVector nodes(grid_points);
  for (int j = 0; j < grid_points; ++j) {
    nodes[j] = -cfg_base.l + 2.0 * cfg_base.l * j / (grid_points - 1);
  }
  for (double gamma : gammas) {
    PhysicalConfig cfg = cfg_base;
    cfg.gamma = gamma;
    validate_config(cfg);
    if (cfg.periodic()) fail("PeriodicGammaNotAllowed", "limit study needs gamma > 0");
    double sup = 0.0;
    for (int a = 0; a < grid_points; ++a) {
      for (int b = 0; b < grid_points; ++b) {
        const double err = std::abs(kernel_finite_part(cfg, nodes[a], nodes[b]) -
                                    kernel_periodic(periodic_cfg, nodes[a], nodes[b]));
        sup = std::max(sup, err);
      }
    }
    study.rows.push_back({gamma, sup});
  }
  if (study.rows.size() >= 2) {
    RealVector x(study.rows.size()), y(study.rows.size());
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
      x[static_cast<Eigen::Index>(i)] = study.rows[i].gamma;
      y[static_cast<Eigen::Index>(i)] = study.rows[i].sup_error;
    }
    study.slope = fit_loglog_slope(x, y);
  }
  return study;
}

ConvergenceStudy convergence_study(const PhysicalConfig& cfg, const CanonicalState& reference,
                                   const std::vector<int>& n_max_sequence) {
  if (n_max_sequence.empty()) fail("ValidationError", "convergence study needs at least one n_max");
  ConvergenceStudy study;
  for (int n_max : n_max_sequence) {
    const int populated = n_max / 2;
    const CanonicalState truncated = truncate_canonical_state(cfg, reference, populated);
    const BasisSpec basis = BasisSpec::make(cfg, n_max);
    study.rows.push_back({n_max, commutator_residual(cfg, basis, truncated)});
  }
  if (study.rows.size() >= 2) {
    RealVector x(study.rows.size()), y(study.rows.size());
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
      x[static_cast<Eigen::Index>(i)] = study.rows[i].n_max;
      y[static_cast<Eigen::Index>(i)] = study.rows[i].residual;
    }
    study.slope = fit_loglog_slope(x, y);
  }
  return study;
}

}  // namespace toa
