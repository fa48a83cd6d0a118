#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toa/domain.hpp"

namespace toa {

struct SpectrumReport {
  RealVector eigenvalues;       // ascending
  ComplexMatrix eigenvectors;   // columns, phase-fixed
  double pairing_defect = 0.0;  // max_k |tau_k + tau_{dim+1-k}|
  double eigenvalue_sum = 0.0;
  double reconstruction_defect = 0.0;  // max |V L V^dagger - T|
};

/// Hermitian eigendecomposition with a reproducible eigenvector convention:
/// each column is rotated so its first nonzero component is real positive,
/// and degenerate clusters are ordered lexicographically after that fix.
SpectrumReport spectral_decomposition(const OperatorMatrix& op);

/// <state|T|state>, real by Hermiticity. State must be normalized.
double toa_expectation(const OperatorMatrix& op, const WaveState& state);

struct ZeroExpectationEntry {
  std::string kind;  // "span" | "complement"
  int n;
  double expectation;
};

struct ZeroExpectationReport {
  std::vector<ZeroExpectationEntry> entries;
  double max_abs = 0.0;
};

/// <T> over every span and complement function with index <= n_limit.
ZeroExpectationReport zero_expectation_suite(const PhysicalConfig& cfg, int n_limit, int basis_n_max);

struct UncertaintyReport {
  std::string state_id;
  double delta_t = 0.0;
  double delta_e = 0.0;
  double product = 0.0;
  bool in_domain = false;
  bool divergent_moment = false;  // <H^2> dominated by the truncation edge
};

UncertaintyReport uncertainty_product(const PhysicalConfig& cfg, const OperatorMatrix& hamiltonian,
                                      const OperatorMatrix& toa, const WaveState& state,
                                      std::string state_id);

/// Hilbert-Schmidt norm  (integral of |K|^2 over the square)^(1/2) by
/// diagonal-split quadrature.
double hs_norm(const PhysicalConfig& cfg, KernelPath path, int panel_order);

struct CovarianceReport {
  double alpha = 0.0;
  double spectrum_preservation_defect = 0.0;  // max_k |eig_k(T') - eig_k(T)|
  double weyl_shift_defect = 0.0;             // min_k |eig_k(T') - (eig_k(T) + alpha)|
};

/// Conjugates T by U = exp(i alpha H / hbar) and compares sorted spectra.
/// Imprimitivity covariance would force the shifted spectrum; a bounded
/// spectrum cannot satisfy it, which the two defects certify.
CovarianceReport covariance_violation(const PhysicalConfig& cfg, const OperatorMatrix& hamiltonian,
                                      const OperatorMatrix& toa, double alpha);

struct LimitStudyRow {
  double gamma;
  double sup_error;  // sup over the grid of |finite_part - periodic|
};

struct LimitStudy {
  std::vector<LimitStudyRow> rows;
  std::optional<double> slope;  // log-log fit; absent for single-row tables
};

LimitStudy limit_study(const PhysicalConfig& cfg_base, const std::vector<double>& gammas,
                       int grid_points);

struct ConvergenceRow {
  int n_max;
  double residual;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::optional<double> slope;
};

/// Commutator residual of truncations of a fixed reference state as the
/// basis grows; the populated span length is n_max/2 at each level.
ConvergenceStudy convergence_study(const PhysicalConfig& cfg, const CanonicalState& reference,
                                   const std::vector<int>& n_max_sequence);

}  // namespace toa
