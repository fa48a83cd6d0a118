#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toa/operators.hpp"

using namespace toa;

namespace {

PhysicalConfig natural(double gamma) {
  PhysicalConfig cfg;
  cfg.gamma = gamma;
  return cfg;
}

}  // namespace

TEST_CASE("position matrix against grid quadrature") {
  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec basis = BasisSpec::make(cfg, 4);
  const OperatorMatrix q = position_matrix(cfg, basis);

  // oracle: Simpson quadrature of integral q conj(phi_m) phi_n
  const GridSpec grid = GridSpec::simpson(cfg, 2049);
  for (int m : {0, 1, -3}) {
    for (int n : {0, 1, 2, -2}) {
      Complex oracle(0.0, 0.0);
      for (Eigen::Index j = 0; j < grid.size(); ++j) {
        oracle += grid.weights[j] * std::conj(eval_eigenfunction(cfg, m, grid.nodes[j])) *
                  grid.nodes[j] * eval_eigenfunction(cfg, n, grid.nodes[j]);
      }
      CHECK(std::abs(q.entries(basis.position_of(m), basis.position_of(n)) - oracle) < 1e-10);
    }
  }

  const Complex q01 = q.entries(basis.position_of(0), basis.position_of(1));
  CHECK(q01.real() == 0.0);
  CHECK(q01.imag() == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(q.entries(basis.position_of(1), basis.position_of(0)) == std::conj(q01));
  for (Eigen::Index a = 0; a < basis.dim(); ++a) CHECK(q.entries(a, a) == Complex(0.0, 0.0));

  // gamma independence
  const OperatorMatrix q2 = position_matrix(natural(0.9), basis);
  CHECK((q.entries - q2.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("momentum, inverse and hamiltonian matrices") {
  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec basis = BasisSpec::make(cfg, 8);
  const OperatorMatrix p = momentum_matrix(cfg, basis);
  const OperatorMatrix pinv = momentum_inverse_matrix(cfg, basis);
  const OperatorMatrix h = hamiltonian_matrix(cfg, basis);

  CHECK(pinv.entries(basis.position_of(0), basis.position_of(0)).real() == 2.0);
  CHECK(h.entries(basis.position_of(0), basis.position_of(0)).real() == 0.125);

  const ComplexMatrix identity = p.entries * pinv.entries;
  CHECK((identity - ComplexMatrix::Identity(basis.dim(), basis.dim())).cwiseAbs().maxCoeff() <
        1e-15);

  // H and p commute exactly (both diagonal)
  CHECK((h.entries * p.entries - p.entries * h.entries).cwiseAbs().maxCoeff() == 0.0);

  for (Eigen::Index a = 0; a < basis.dim(); ++a) CHECK(h.entries(a, a).real() >= 0.0);

  const PhysicalConfig periodic = natural(0.0);
  const BasisSpec pbasis = BasisSpec::make(periodic, 8);
  const OperatorMatrix pinv0 = momentum_inverse_matrix(periodic, pbasis);
  for (int n = 1; n <= 8; ++n) {
    CHECK(pinv0.entries(pbasis.position_of(n), pbasis.position_of(n)).real() ==
          doctest::Approx(1.0 / (n * kPi)).epsilon(1e-15));
  }

  // a hand-made basis carrying the zero mode at gamma = 0 must be refused
  BasisSpec pathological;
  pathological.n_max = 1;
  pathological.indices = {-1, 0, 1};
  CHECK_THROWS_WITH_AS(momentum_inverse_matrix(periodic, pathological),
                       doctest::Contains("ZeroModePresent"), ToaError);
}

TEST_CASE("analytic TOA matrix") {
  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec basis = BasisSpec::make(cfg, 8);
  const OperatorMatrix t = toa_matrix_analytic(cfg, basis);

  // independent arithmetic for T_{01}
  const double expected = -0.5 * (1.0 / kPi) * (1.0 / 0.5 + 1.0 / (0.5 + kPi));
  const Complex t01 = t.entries(basis.position_of(0), basis.position_of(1));
  CHECK(t01.real() == 0.0);
  CHECK(t01.imag() == doctest::Approx(expected).epsilon(1e-15));
  CHECK(t01.imag() == doctest::Approx(-0.36202).epsilon(1e-4));

  Complex trace(0.0, 0.0);
  for (Eigen::Index a = 0; a < basis.dim(); ++a) {
    CHECK(t.entries(a, a) == Complex(0.0, 0.0));
    trace += t.entries(a, a);
  }
  CHECK(trace == Complex(0.0, 0.0));
  CHECK(hermiticity_defect(t.entries) == 0.0);
}

TEST_CASE("parity-conjugation symmetry of the TOA matrix") {
  // kernel identity T(-q,-q') = -conj(T(q,q')): parity followed by conjugation
  // fixes every twisted eigenfunction, so the matrix form is conj(T) = -T,
  // i.e. purely imaginary entries, at every gamma
  for (double gamma : {0.1, 0.5, 0.9, 0.0}) {
    const PhysicalConfig cfg = natural(gamma);
    const BasisSpec basis = BasisSpec::make(cfg, 12);
    const OperatorMatrix t = toa_matrix_analytic(cfg, basis);
    CHECK(t.entries.real().cwiseAbs().maxCoeff() < 1e-12);
  }

  // at gamma = 0 the index reversal n -> -n is additionally a symmetry
  {
    const PhysicalConfig cfg = natural(0.0);
    const BasisSpec basis = BasisSpec::make(cfg, 12);
    const OperatorMatrix t = toa_matrix_analytic(cfg, basis);
    const Eigen::Index d = basis.dim();
    double defect = 0.0;
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        defect = std::max(defect,
                          std::abs(std::conj(t.entries(d - 1 - a, d - 1 - b)) + t.entries(a, b)));
      }
    }
    CHECK(defect < 1e-12);
  }

  // for twisted gamma the index reversal is not a symmetry: p_{-n} != -p_n
  {
    const PhysicalConfig cfg = natural(0.5);
    const BasisSpec basis = BasisSpec::make(cfg, 12);
    const OperatorMatrix t = toa_matrix_analytic(cfg, basis);
    const Eigen::Index d = basis.dim();
    double defect = 0.0;
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        defect = std::max(defect,
                          std::abs(std::conj(t.entries(d - 1 - a, d - 1 - b)) + t.entries(a, b)));
      }
    }
    CHECK(defect > 0.1);
  }
}

TEST_CASE("quadrature TOA matrix agrees with the analytic construction") {
  for (double gamma : {0.1, 0.5, 0.9}) {
    const PhysicalConfig cfg = natural(gamma);
    const BasisSpec basis = BasisSpec::make(cfg, 4);
    const OperatorMatrix analytic = toa_matrix_analytic(cfg, basis);
    const QuadratureMatrixResult quad = toa_matrix_quadrature(cfg, basis, KernelPath::closed, 64);
    CHECK((analytic.entries - quad.op.entries).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(quad.hermitization_defect < 1e-9);
  }

  const PhysicalConfig periodic = natural(0.0);
  const BasisSpec pbasis = BasisSpec::make(periodic, 4);
  const OperatorMatrix analytic0 = toa_matrix_analytic(periodic, pbasis);
  const QuadratureMatrixResult quad0 = toa_matrix_quadrature(periodic, pbasis, KernelPath::periodic, 64);
  CHECK((analytic0.entries - quad0.op.entries).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("quadrature guards and worker invariance") {
  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec basis = BasisSpec::make(cfg, 2);
  CHECK_THROWS_WITH_AS(toa_matrix_quadrature(natural(0.0), basis, KernelPath::closed, 64),
                       doctest::Contains("PeriodicGammaNotAllowed"), ToaError);
  CHECK_THROWS_WITH_AS(toa_matrix_quadrature(natural(1e-7), basis, KernelPath::closed, 64),
                       doctest::Contains("ConditioningError"), ToaError);
  CHECK_THROWS_WITH_AS(toa_matrix_quadrature(cfg, basis, KernelPath::closed, 4),
                       doctest::Contains("panel_order"), ToaError);
  CHECK_THROWS_WITH_AS(toa_matrix_quadrature(cfg, basis, KernelPath::closed, 300),
                       doctest::Contains("QuadratureBudgetExceeded"), ToaError);

  // entries are computed independently: worker count cannot change a byte
  const QuadratureMatrixResult serial = toa_matrix_quadrature(cfg, basis, KernelPath::closed, 16, 1);
  const QuadratureMatrixResult parallel =
      toa_matrix_quadrature(cfg, basis, KernelPath::closed, 16, 4);
  CHECK((serial.op.entries - parallel.op.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK(serial.hermitization_defect == parallel.hermitization_defect);
}

TEST_CASE("hermitian flag is validated at construction") {
  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec basis = BasisSpec::make(cfg, 2);
  ComplexMatrix bad = ComplexMatrix::Zero(basis.dim(), basis.dim());
  bad(0, 1) = Complex(1.0, 0.0);  // not Hermitian
  CHECK_THROWS_WITH_AS(OperatorMatrix::make(bad, basis, "bad", true),
                       doctest::Contains("NonHermitianInput"), ToaError);
  const OperatorMatrix tolerated = OperatorMatrix::make(bad, basis, "raw", false);
  CHECK_FALSE(tolerated.hermitian);
}

TEST_CASE("position-momentum commutator residual on grid samples") {
  const PhysicalConfig cfg = natural(0.5);
  const GridSpec grid = GridSpec::simpson(cfg, 513);
  const Eigen::Index m = grid.size();

  // smooth test function vanishing at the walls: (1 - q^2) e^{iq}
  ComplexVector phi(m), dphi(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double q = grid.nodes[j];
    const Complex e = std::polar(1.0, q);
    phi[j] = (1.0 - q * q) * e;
    dphi[j] = e * (Complex(-2.0 * q, 0.0) + Complex(0.0, 1.0) * (1.0 - q * q));
  }
  const CcrResidualReport smooth = ccr_position_momentum_residual(cfg, grid, phi, dphi);
  CHECK(smooth.residual < 1e-6);
  CHECK_FALSE(smooth.domain_violation);
  CHECK_FALSE(smooth.zero_input);

  // momentum eigenfunction: identity still holds pointwise, but the boundary
  // values are nonzero, so q phi leaves the momentum domain
  ComplexVector eig(m), deig(m);
  const double p1 = momentum_eigenvalue(cfg, 1);
  for (Eigen::Index j = 0; j < m; ++j) {
    eig[j] = eval_eigenfunction(cfg, 1, grid.nodes[j]);
    deig[j] = Complex(0.0, p1 / cfg.hbar) * eig[j];
  }
  const CcrResidualReport twisted = ccr_position_momentum_residual(cfg, grid, eig, deig);
  CHECK(twisted.domain_violation);
  CHECK(twisted.residual < 1e-6);

  const CcrResidualReport zero = ccr_position_momentum_residual(
      cfg, grid, ComplexVector::Zero(m), ComplexVector::Zero(m));
  CHECK(zero.zero_input);
  CHECK(zero.residual == 0.0);

  CHECK_THROWS_WITH_AS(
      ccr_position_momentum_residual(cfg, grid, ComplexVector::Zero(5), ComplexVector::Zero(5)),
      doctest::Contains("NonSmoothInput"), ToaError);
}
