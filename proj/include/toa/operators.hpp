#pragma once

#include <string>

#include "toa/grid.hpp"
#include "toa/kernels.hpp"

namespace toa {

/// Dense matrix representation in a truncated momentum basis.
struct OperatorMatrix {
  ComplexMatrix entries;
  BasisSpec basis;
  bool hermitian = false;
  std::string label;

  /// Construction validates the Hermitian flag: max |A - A^dagger| < 1e-12.
  static OperatorMatrix make(ComplexMatrix entries, BasisSpec basis, std::string label,
                             bool expect_hermitian);
};

double hermiticity_defect(const ComplexMatrix& a);

/// q_mn = -i l (-1)^{n-m} / ((n-m) pi) off the diagonal, q_nn = 0.
OperatorMatrix position_matrix(const PhysicalConfig& cfg, const BasisSpec& basis);

/// diag(p_n).
OperatorMatrix momentum_matrix(const PhysicalConfig& cfg, const BasisSpec& basis);

/// diag(1/p_n); requires 0 not in the momentum spectrum on the index set.
OperatorMatrix momentum_inverse_matrix(const PhysicalConfig& cfg, const BasisSpec& basis);

/// diag(p_n^2 / (2 mu)).
OperatorMatrix hamiltonian_matrix(const PhysicalConfig& cfg, const BasisSpec& basis);

/// T = -mu (q p^{-1} + p^{-1} q)/2 assembled element-wise:
/// T_mn = -(mu/2) q_mn (1/p_m + 1/p_n). Zero diagonal, Hermitian, purely
/// imaginary. At gamma = 0 this is the T_0 matrix on the zero-mode-free basis.
OperatorMatrix toa_matrix_analytic(const PhysicalConfig& cfg, const BasisSpec& basis);

enum class KernelPath { closed, periodic };

struct QuadratureMatrixResult {
  OperatorMatrix op;             // Hermitized, (A + A^dagger)/2
  double hermitization_defect;   // max |A - A^dagger| before symmetrization
};

/// Independent construction of the same operator: Nystrom-style double
/// quadrature of the kernel against the eigenbasis, diagonal-split into the
/// two smooth triangles.
QuadratureMatrixResult toa_matrix_quadrature(const PhysicalConfig& cfg, const BasisSpec& basis,
                                             KernelPath path, int panel_order,
                                             unsigned workers = 1);

struct CcrResidualReport {
  double residual = 0.0;        // grid max of |q(p phi) - p(q phi) - i hbar phi|
  bool domain_violation = false;  // phi(+-l) != 0: q phi leaves D(p_gamma)
  bool zero_input = false;        // residual of the zero vector is not normalizable
};

/// Pointwise position-momentum commutator check on grid samples of a smooth
/// test function and its derivative. (q phi)' is formed by finite differences.
CcrResidualReport ccr_position_momentum_residual(const PhysicalConfig& cfg, const GridSpec& grid,
                                                 const ComplexVector& phi,
                                                 const ComplexVector& dphi);

}  // namespace toa
