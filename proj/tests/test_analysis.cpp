#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toa/analysis.hpp"
#include "toa/quadrature.hpp"

using namespace toa;

namespace {

PhysicalConfig natural(double gamma) {
  PhysicalConfig cfg;
  cfg.gamma = gamma;
  return cfg;
}

}  // namespace

TEST_CASE("spectral decomposition basics") {
  for (double gamma : {0.5, 0.0}) {
    const PhysicalConfig cfg = natural(gamma);
    const BasisSpec basis = BasisSpec::make(cfg, 64);
    const OperatorMatrix t = toa_matrix_analytic(cfg, basis);
    const SpectrumReport report = spectral_decomposition(t);

    CHECK(report.reconstruction_defect < 1e-11);
    CHECK(std::abs(report.eigenvalue_sum) < 1e-10);
    CHECK(report.pairing_defect < 1e-10);
    for (Eigen::Index k = 1; k < report.eigenvalues.size(); ++k) {
      CHECK(report.eigenvalues[k] >= report.eigenvalues[k - 1] - 1e-10);
    }

    // phase convention: first nonzero component real positive
    for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) {
      for (Eigen::Index r = 0; r < report.eigenvectors.rows(); ++r) {
        const Complex v = report.eigenvectors(r, k);
        if (std::abs(v) > 1e-12) {
          CHECK(v.real() > 0.0);
          CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v));
          break;
        }
      }
    }

    // determinism of repeated decompositions
    const SpectrumReport again = spectral_decomposition(t);
    CHECK(again.eigenvalues == report.eigenvalues);
    CHECK(again.eigenvectors == report.eigenvectors);
  }

  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec small = BasisSpec::make(cfg, 2);
  ComplexMatrix raw = ComplexMatrix::Zero(small.dim(), small.dim());
  raw(0, 1) = 1.0;
  const OperatorMatrix not_hermitian = OperatorMatrix::make(raw, small, "raw", false);
  CHECK_THROWS_WITH_AS(spectral_decomposition(not_hermitian),
                       doctest::Contains("NonHermitianInput"), ToaError);
}

TEST_CASE("degenerate clusters are ordered reproducibly") {
  PhysicalConfig cfg;
  cfg.gamma = 0.5;
  const BasisSpec basis = BasisSpec::make(cfg, 1);
  const OperatorMatrix identity = OperatorMatrix::make(
      ComplexMatrix::Identity(basis.dim(), basis.dim()), basis, "identity", true);
  const SpectrumReport a = spectral_decomposition(identity);
  const SpectrumReport b = spectral_decomposition(identity);
  CHECK(a.eigenvectors == b.eigenvectors);
  CHECK(a.reconstruction_defect < 1e-14);
  for (Eigen::Index k = 0; k < a.eigenvalues.size(); ++k) {
    CHECK(a.eigenvalues[k] == 1.0);
  }
  // lexicographic order of phase-fixed columns
  for (Eigen::Index k = 1; k < a.eigenvalues.size(); ++k) {
    bool less_or_equal = true;
    for (Eigen::Index r = 0; r < a.eigenvectors.rows(); ++r) {
      const double x = a.eigenvectors(r, k - 1).real();
      const double y = a.eigenvectors(r, k).real();
      if (x != y) {
        less_or_equal = x < y;
        break;
      }
    }
    CHECK(less_or_equal);
  }
}

TEST_CASE("zero expectation values on span and complement functions") {
  for (double gamma : {0.1, 0.5, 0.9}) {
    const ZeroExpectationReport report = zero_expectation_suite(natural(gamma), 10, 32);
    CHECK(report.entries.size() == 21);  // 10 span + complement 0..10
    CHECK(report.max_abs < 1e-12);
  }
}

TEST_CASE("nonzero expectation for a mixed momentum pair, against quadrature") {
  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec basis = BasisSpec::make(cfg, 4);
  const OperatorMatrix t = toa_matrix_analytic(cfg, basis);

  ComplexVector c = ComplexVector::Zero(basis.dim());
  c[basis.position_of(1)] = 1.0 / std::sqrt(2.0);
  c[basis.position_of(-1)] = Complex(0.0, 1.0 / std::sqrt(2.0));
  const double value = toa_expectation(t, WaveState::make(cfg, basis, c));

  // brute-force 2x2: <T> = -Im T_{1,-1}
  const Complex t_1m1 = t.entries(basis.position_of(1), basis.position_of(-1));
  CHECK(value == doctest::Approx(-t_1m1.imag()).epsilon(1e-14));
  CHECK(value == doctest::Approx(-0.008272426622547598).epsilon(1e-12));
  CHECK(value != 0.0);

  // independent route: T_{1,-1} by direct quadrature of the closed kernel
  const GaussLegendre& rule = GaussLegendre::rule(48);
  auto integrand = [&](double q, double q_prime) {
    return std::conj(eval_eigenfunction(cfg, 1, q)) * kernel_closed(cfg, q, q_prime) *
           eval_eigenfunction(cfg, -1, q_prime);
  };
  const Complex quad = integrate_square_split(cfg.l, rule, integrand);
  CHECK(std::abs(quad - t_1m1) < 1e-10);

  ComplexVector unnormalized = 2.0 * c;
  CHECK_THROWS_WITH_AS(toa_expectation(t, WaveState::make(cfg, basis, unnormalized)),
                       doctest::Contains("UnnormalizedState"), ToaError);
}

TEST_CASE("uncertainty products") {
  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec basis = BasisSpec::make(cfg, 64);
  const OperatorMatrix t = toa_matrix_analytic(cfg, basis);
  const OperatorMatrix h = hamiltonian_matrix(cfg, basis);

  // projected domain states satisfy the Robertson bound at hbar/2
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const CanonicalState state = seeded_canonical_state(cfg, seed, 32, 3.0, 16);
    const WaveState wave = to_wave_state(cfg, basis, state).normalize();
    const UncertaintyReport report = uncertainty_product(cfg, h, t, wave, "s");
    CHECK(report.product >= 0.5 * (1.0 - 1e-3));
    CHECK(report.in_domain);
    CHECK_FALSE(report.divergent_moment);
    CHECK(report.product == report.delta_t * report.delta_e);
  }

  // momentum eigenstate: sharp energy
  ComplexVector c = ComplexVector::Zero(basis.dim());
  c[basis.position_of(1)] = 1.0;
  const UncertaintyReport eigen = uncertainty_product(cfg, h, t, WaveState::make(cfg, basis, c), "phi1");
  CHECK(eigen.delta_e == 0.0);
  CHECK(eigen.product == 0.0);

  // eigenvector of T: sharp arrival time, outside the domain, bound violated
  const SpectrumReport spectrum = spectral_decomposition(t);
  const WaveState witness =
      WaveState::make(cfg, basis, spectrum.eigenvectors.col(basis.dim() / 2)).normalize();
  const UncertaintyReport outside = uncertainty_product(cfg, h, t, witness, "eigvec");
  CHECK(outside.delta_t < 1e-8);
  CHECK(outside.product < 0.25);
  CHECK_FALSE(outside.in_domain);

  // a plateau state built by full-length orthogonal projection puts weight on
  // the truncation edge: its energy second moment is flagged
  const ConstraintFunctional functional = constraint_weights(cfg, 32);
  const CanonicalState plateau = project_onto_domain(seeded_raw_coeffs(5, 32, 3.0), functional);
  const WaveState plateau_wave = to_wave_state(cfg, basis, plateau).normalize();
  const UncertaintyReport flagged = uncertainty_product(cfg, h, t, plateau_wave, "plateau");
  CHECK(flagged.divergent_moment);
}

TEST_CASE("hilbert-schmidt norms") {
  const PhysicalConfig periodic = natural(0.0);
  const double hs0 = hs_norm(periodic, KernelPath::periodic, 64);
  CHECK(hs0 == doctest::Approx(std::sqrt(7.0 / 90.0)).epsilon(1e-9));

  // independent oracle: reduce the double integral over the q > q' triangle
  // with u = q+q', v = q-q', integrate out u, and Simpson the remaining
  // polynomial (1-v)^2 (2-v)^3 / 3; twice that triangle over the 1/16 prefactor
  {
    const int m = 1025;
    const double h = 2.0 / (m - 1);
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double v = h * j;
      const double f = (1.0 - v) * (1.0 - v) * (2.0 - v) * (2.0 - v) * (2.0 - v) / 3.0;
      const double w = (j == 0 || j == m - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      acc += w * h / 3.0 * f;
    }
    const double reduced = std::sqrt(2.0 * acc / 16.0);
    CHECK(reduced == doctest::Approx(hs0).epsilon(1e-12));
    CHECK(reduced == doctest::Approx(std::sqrt(7.0 / 90.0)).epsilon(1e-12));
  }

  // exact l^4 scaling of the squared norm
  PhysicalConfig wide = periodic;
  wide.l = 2.0;
  const double hs_wide = hs_norm(wide, KernelPath::periodic, 64);
  CHECK(std::abs(hs_wide * hs_wide / (hs0 * hs0) - 16.0) / 16.0 < 1e-9);

  // closed kernel: |T_gamma|^2 is (q+q')^2 scaled, so mu l^2/(hbar sqrt6 sin g)
  const double hs_closed = hs_norm(natural(0.5), KernelPath::closed, 64);
  CHECK(hs_closed == doctest::Approx(1.0 / (std::sqrt(6.0) * std::sin(0.5))).epsilon(1e-9));

  CHECK_THROWS_WITH_AS(hs_norm(natural(0.0), KernelPath::closed, 64),
                       doctest::Contains("PeriodicGammaNotAllowed"), ToaError);
  CHECK_THROWS_WITH_AS(hs_norm(natural(1e-8), KernelPath::closed, 64),
                       doctest::Contains("ConditioningError"), ToaError);
}

TEST_CASE("covariance violation") {
  const PhysicalConfig cfg = natural(0.5);
  const BasisSpec basis = BasisSpec::make(cfg, 32);
  const OperatorMatrix t = toa_matrix_analytic(cfg, basis);
  const OperatorMatrix h = hamiltonian_matrix(cfg, basis);

  for (double alpha : {0.5, 1.0, 2.0}) {
    const CovarianceReport report = covariance_violation(cfg, h, t, alpha);
    CHECK(report.spectrum_preservation_defect < 1e-10);
    CHECK(report.weyl_shift_defect >= alpha - 1e-6);
  }

  const CovarianceReport at_zero = covariance_violation(cfg, h, t, 0.0);
  CHECK(at_zero.spectrum_preservation_defect == 0.0);
  CHECK(at_zero.weyl_shift_defect == 0.0);
}

TEST_CASE("limit study") {
  const LimitStudy study = limit_study(natural(0.5), {1e-2, 1e-3, 1e-4}, 21);
  REQUIRE(study.rows.size() == 3);
  CHECK(study.slope.has_value());
  CHECK(*study.slope > 0.8);
  CHECK(*study.slope < 1.2);
  for (std::size_t i = 1; i < study.rows.size(); ++i) {
    CHECK(study.rows[i].sup_error < study.rows[i - 1].sup_error);
  }

  const LimitStudy single = limit_study(natural(0.5), {1e-3}, 21);
  CHECK_FALSE(single.slope.has_value());

  CHECK_THROWS_WITH_AS(limit_study(natural(0.5), {0.0}, 21),
                       doctest::Contains("PeriodicGammaNotAllowed"), ToaError);
}

TEST_CASE("convergence study") {
  const PhysicalConfig cfg = natural(0.5);
  const CanonicalState reference = seeded_canonical_state(cfg, 42, 1024, 3.0, 16);
  const ConvergenceStudy study = convergence_study(cfg, reference, {32, 64, 128});
  REQUIRE(study.rows.size() == 3);
  CHECK(study.slope.has_value());
  for (std::size_t i = 1; i < study.rows.size(); ++i) {
    CHECK(study.rows[i].residual < study.rows[i - 1].residual);
  }

  const ConvergenceStudy single = convergence_study(cfg, reference, {32});
  CHECK_FALSE(single.slope.has_value());
}

TEST_CASE("log-log slope fit recovers exact power laws") {
  RealVector x(4), y(4);
  for (int i = 0; i < 4; ++i) {
    x[i] = std::pow(2.0, i + 1);
    y[i] = 3.0 * std::pow(x[i], -2.0);
  }
  CHECK(fit_loglog_slope(x, y) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(fit_loglog_slope(x.head(1), y.head(1)), doctest::Contains("ValidationError"),
                       ToaError);
}
