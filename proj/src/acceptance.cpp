#include "toa/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "toa/analysis.hpp"
#include "toa/quadrature.hpp"
#include "toa/reports.hpp"

namespace toa {

namespace {

namespace fs = std::filesystem;

constexpr double kOracleEquivalenceTol = 1e-8;       // analytic vs quadrature entries
constexpr double kHermitizationDefectTol = 1e-9;     // quadrature pre-symmetrization
constexpr double kSeriesSlopeLo = -1.3, kSeriesSlopeHi = -0.7;
constexpr double kKernelSymmetryTol = 1e-14;
constexpr double kHermitianTol = 1e-12;
constexpr double kHsNormTol = 1e-6;
constexpr double kHsScalingRelTol = 1e-9;
constexpr double kCommutatorDoublingFactor = 2.0;
constexpr double kZeroExpectationTol = 1e-12;
constexpr double kUncertaintyFloor = 0.5 * (1.0 - 1e-3);  // hbar/2 in natural units
constexpr double kWitnessProductCap = 0.25;
constexpr double kLimitSlopeLo = 0.8, kLimitSlopeHi = 1.2;
constexpr double kSpectrumPreservationTol = 1e-10;
constexpr double kWeylShiftMargin = 1e-6;
constexpr double kPairingDefectTol = 1e-10;
constexpr double kEigenvalueSumTol = 1e-10;

constexpr int kOracleNMax = 8;
constexpr int kPanelOrder = 64;
constexpr int kCommutatorReferenceLength = 4096;
constexpr int kCommutatorBatch = 16;
constexpr double kFamilyDecay = 3.0;
constexpr int kFamilyWindow = 16;
constexpr int kUncertaintyNMax = 256;
constexpr int kUncertaintyStates = 100;
constexpr int kSpectralNMax = 128;

// commutator-convergence medians at n_max = 256, frozen from the first run of
// this implementation (master seed 42, batch 16, s = 3, window 16)
const std::map<std::string, double> kCommutatorGoldenFinalMedian = {
    {"0.1", 2.0771362880989588e-05},
    {"0.5", 2.0754693058816891e-05},
    {"0.9", 2.0718636876245684e-05},
    {"0", 2.0691405608180132e-05},
};
constexpr double kGoldenRelTol = 1e-6;

struct GammaCase {
  std::string label;
  double gamma;
};

const std::vector<GammaCase> kTwistedCases = {{"0.1", 0.1}, {"0.5", 0.5}, {"0.9", 0.9}};

std::string fmt(double v) { return format_sig17(v); }

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// deterministic point stream for the kernel-consistency sample
struct PointStream {
  std::uint64_t state;
  explicit PointStream(std::uint64_t seed) : state(seed) {}
  double next_unit() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z) / 18446744073709551616.0;
  }
};

struct Pipeline {
  AcceptanceOptions options;
  fs::path dir;
  std::string config_hash;
  std::vector<CriterionResult> results;

  void write_csv(const std::string& name, const CsvTable& table) {
    write_text_file(dir / name, table.to_string());
  }
  void write_json(const std::string& name, const Json& json) {
    write_text_file(dir / name, dump_json_sig17(json));
  }

  void add(int id, std::string name, bool pass, std::string details) {
    results.push_back({id, std::move(name), pass, std::move(details)});
  }

  PhysicalConfig config_for(double gamma) const {
    PhysicalConfig cfg;
    cfg.gamma = gamma;
    return cfg;
  }

  void criterion_1_oracle_equivalence() {
    bool pass = true;
    std::ostringstream details;
    double worst_defect = 0.0;
    auto run_case = [&](const std::string& label, const PhysicalConfig& cfg, KernelPath path) {
      const BasisSpec basis = BasisSpec::make(cfg, kOracleNMax);
      const OperatorMatrix analytic = toa_matrix_analytic(cfg, basis);
      const QuadratureMatrixResult quad =
          toa_matrix_quadrature(cfg, basis, path, kPanelOrder, options.workers);
      const double diff = (analytic.entries - quad.op.entries).cwiseAbs().maxCoeff();
      pass = pass && diff < kOracleEquivalenceTol &&
             quad.hermitization_defect < kHermitizationDefectTol;
      worst_defect = std::max(worst_defect, quad.hermitization_defect);
      details << label << ": max|analytic-quadrature|=" << fmt(diff) << " ";
      write_csv("matrix_toa_analytic_" + label + ".csv",
                matrix_dump(analytic, cfg, "analytic", config_hash));
      write_csv("matrix_toa_quadrature_" + label + ".csv",
                matrix_dump(quad.op, cfg, "quadrature", config_hash));
    };
    for (const auto& c : kTwistedCases) {
      run_case("gamma_" + c.label, config_for(c.gamma), KernelPath::closed);
    }
    run_case("periodic", config_for(0.0), KernelPath::periodic);
    details << "max_hermitization_defect=" << fmt(worst_defect);
    add(1, "oracle equivalence of operator construction", pass, details.str());
  }

  void criterion_2_kernel_consistency() {
    const PhysicalConfig cfg = config_for(0.5);
    PointStream stream(0x7f4a7c15u);
    std::vector<std::pair<double, double>> pairs;
    while (pairs.size() < 100) {
      const double q = -cfg.l + 2.0 * cfg.l * stream.next_unit();
      const double q_prime = -cfg.l + 2.0 * cfg.l * stream.next_unit();
      if (std::abs(q - q_prime) > 0.05 * cfg.l) pairs.emplace_back(q, q_prime);
    }

    const std::vector<int> ladder = {50, 100, 200, 400, 800, 1600};
    RealVector ns(static_cast<Eigen::Index>(ladder.size()));
    RealVector errs(static_cast<Eigen::Index>(ladder.size()));
    CsvTable table;
    table.header_comments = dump_header(cfg, config_hash, "series partial-sum max error");
    table.columns = {"n_terms", "max_error"};
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      double max_err = 0.0;
      for (const auto& [q, q_prime] : pairs) {
        max_err = std::max(max_err, std::abs(kernel_series(cfg, q, q_prime, ladder[i]) -
                                             kernel_closed(cfg, q, q_prime)));
      }
      ns[static_cast<Eigen::Index>(i)] = ladder[i];
      errs[static_cast<Eigen::Index>(i)] = max_err;
      table.rows.push_back({std::to_string(ladder[i]), fmt(max_err)});
    }
    const double slope = fit_loglog_slope(ns, errs);
    write_csv("kernel_series_convergence.csv", table);

    double symmetry_defect = 0.0;
    const PhysicalConfig periodic_cfg = config_for(0.0);
    for (const auto& [q, q_prime] : pairs) {
      auto defect = [&](Complex a, Complex b) { return std::abs(a - std::conj(b)); };
      symmetry_defect = std::max(
          symmetry_defect, defect(kernel_closed(cfg, q, q_prime), kernel_closed(cfg, q_prime, q)));
      symmetry_defect = std::max(symmetry_defect, defect(kernel_series(cfg, q, q_prime, 64),
                                                         kernel_series(cfg, q_prime, q, 64)));
      symmetry_defect =
          std::max(symmetry_defect, defect(zero_mode_term(cfg, q, q_prime),
                                           zero_mode_term(cfg, q_prime, q)));
      symmetry_defect =
          std::max(symmetry_defect, defect(kernel_finite_part(cfg, q, q_prime),
                                           kernel_finite_part(cfg, q_prime, q)));
      symmetry_defect =
          std::max(symmetry_defect, defect(kernel_periodic(periodic_cfg, q, q_prime),
                                           kernel_periodic(periodic_cfg, q_prime, q)));
    }

    const bool pass = slope >= kSeriesSlopeLo && slope <= kSeriesSlopeHi &&
                      symmetry_defect < kKernelSymmetryTol;
    add(2, "kernel consistency (closed vs series, Hermitian symmetry)", pass,
        "slope=" + fmt(slope) + " symmetry_defect=" + fmt(symmetry_defect));
  }

  void criterion_3_self_adjointness() {
    bool pass = true;
    std::ostringstream details;

    double worst = 0.0;
    for (const auto& c : kTwistedCases) {
      const PhysicalConfig cfg = config_for(c.gamma);
      const BasisSpec basis = BasisSpec::make(cfg, 32);
      worst = std::max(worst, hermiticity_defect(position_matrix(cfg, basis).entries));
      worst = std::max(worst, hermiticity_defect(momentum_matrix(cfg, basis).entries));
      worst = std::max(worst, hermiticity_defect(momentum_inverse_matrix(cfg, basis).entries));
      worst = std::max(worst, hermiticity_defect(hamiltonian_matrix(cfg, basis).entries));
      worst = std::max(worst, hermiticity_defect(toa_matrix_analytic(cfg, basis).entries));
    }
    {
      const PhysicalConfig cfg = config_for(0.0);
      const BasisSpec basis = BasisSpec::make(cfg, 32);
      worst = std::max(worst, hermiticity_defect(toa_matrix_analytic(cfg, basis).entries));
    }
    pass = pass && worst < kHermitianTol;
    details << "max_hermiticity_defect=" << fmt(worst) << " ";

    // golden: integral of |T_0|^2 over the square is 7/90 at natural units
    const double hs_periodic = hs_norm(config_for(0.0), KernelPath::periodic, kPanelOrder);
    const double golden_periodic = std::sqrt(7.0 / 90.0);
    pass = pass && std::abs(hs_periodic - golden_periodic) < kHsNormTol;

    PhysicalConfig wide = config_for(0.0);
    wide.l = 2.0;
    const double hs_wide = hs_norm(wide, KernelPath::periodic, kPanelOrder);
    const double scaling_rel =
        std::abs(hs_wide * hs_wide / (hs_periodic * hs_periodic) - 16.0) / 16.0;
    pass = pass && scaling_rel < kHsScalingRelTol;

    // golden: closed-kernel HS norm is mu l^2 / (hbar sqrt(6) sin gamma)
    const double hs_closed = hs_norm(config_for(0.5), KernelPath::closed, kPanelOrder);
    const double golden_closed = 1.0 / (std::sqrt(6.0) * std::sin(0.5));
    pass = pass && std::abs(hs_closed - golden_closed) < kHsNormTol;

    details << "hs_periodic=" << fmt(hs_periodic) << " (golden " << fmt(golden_periodic) << ") "
            << "l4_scaling_rel=" << fmt(scaling_rel) << " hs_closed_gamma_0.5=" << fmt(hs_closed)
            << " (golden " << fmt(golden_closed) << ")";
    Json json;
    json["format_version"] = 1;
    json["config_hash"] = config_hash;
    json["hs_periodic"] = hs_periodic;
    json["hs_periodic_golden"] = golden_periodic;
    json["hs_closed_gamma_0.5"] = hs_closed;
    json["hs_closed_golden"] = golden_closed;
    json["l4_scaling_relative_defect"] = scaling_rel;
    write_json("hsnorm.json", json);
    add(3, "self-adjointness evidence (Hermiticity, Hilbert-Schmidt goldens)", pass, details.str());
  }

  void criterion_4_commutator_convergence() {
    const std::vector<int> levels = {32, 64, 128, 256};
    bool pass = true;
    std::ostringstream details;
    std::vector<GammaCase> cases = kTwistedCases;
    cases.push_back({"0", 0.0});

    for (const auto& c : cases) {
      const PhysicalConfig cfg = config_for(c.gamma);
      std::vector<std::vector<double>> per_state;
      for (int i = 0; i < kCommutatorBatch; ++i) {
        const CanonicalState reference = seeded_canonical_state(
            cfg, options.seed + static_cast<std::uint64_t>(i), kCommutatorReferenceLength,
            kFamilyDecay, kFamilyWindow);
        const ConvergenceStudy study = convergence_study(cfg, reference, levels);
        std::vector<double> residuals;
        for (const auto& row : study.rows) residuals.push_back(row.residual);
        per_state.push_back(std::move(residuals));
      }
      std::vector<double> medians;
      CsvTable table;
      table.header_comments = dump_header(
          cfg, config_hash,
          "median commutator residual over " + std::to_string(kCommutatorBatch) + " seeded states");
      table.columns = {"n_max", "median_residual"};
      for (std::size_t k = 0; k < levels.size(); ++k) {
        std::vector<double> column;
        for (const auto& row : per_state) column.push_back(row[k]);
        medians.push_back(median(column));
        table.rows.push_back({std::to_string(levels[k]), fmt(medians.back())});
      }
      write_csv("commutator_convergence_gamma_" + c.label + ".csv", table);

      bool halves = true;
      for (std::size_t k = 0; k + 1 < medians.size(); ++k) {
        halves = halves && medians[k] >= kCommutatorDoublingFactor * medians[k + 1];
      }
      const double golden = kCommutatorGoldenFinalMedian.at(c.label);
      const bool golden_ok = std::abs(medians.back() - golden) <= kGoldenRelTol * golden;
      pass = pass && halves && golden_ok;
      details << "gamma=" << c.label << " final_median=" << fmt(medians.back())
              << (halves ? "" : " [no-halving]") << (golden_ok ? "" : " [golden-miss]") << " ";
    }

    // sample canonical-state export for the record
    const PhysicalConfig cfg = config_for(0.5);
    const CanonicalState sample =
        seeded_canonical_state(cfg, options.seed, 16, kFamilyDecay, kFamilyWindow);
    write_json("canonical_state_sample.json",
               canonical_state_json(cfg, sample, 32, options.seed, kFamilyDecay, config_hash));

    add(4, "canonical commutation on the domain (residual halves per doubling)", pass,
        details.str());
  }

  void criterion_5_zero_expectation() {
    bool pass = true;
    std::ostringstream details;
    for (const auto& c : kTwistedCases) {
      const PhysicalConfig cfg = config_for(c.gamma);
      const ZeroExpectationReport report = zero_expectation_suite(cfg, 10, 32);
      write_csv("zero_expectation_gamma_" + c.label + ".csv",
                zero_expectation_csv(report, cfg, config_hash));
      pass = pass && report.max_abs < kZeroExpectationTol;
      details << "gamma=" << c.label << " max|<T>|=" << fmt(report.max_abs) << " ";
    }
    add(5, "zero time-of-arrival expectations on span/complement functions", pass, details.str());
  }

  void criterion_6_uncertainty() {
    const PhysicalConfig cfg = config_for(0.5);
    const BasisSpec basis = BasisSpec::make(cfg, kUncertaintyNMax);
    const OperatorMatrix toa = toa_matrix_analytic(cfg, basis);
    const OperatorMatrix hamiltonian = hamiltonian_matrix(cfg, basis);

    std::vector<UncertaintyReport> reports;
    double min_product = std::numeric_limits<double>::infinity();
    bool all_in_domain = true;
    for (int i = 0; i < kUncertaintyStates; ++i) {
      const CanonicalState state =
          seeded_canonical_state(cfg, options.seed + 1000 + static_cast<std::uint64_t>(i),
                                 kUncertaintyNMax / 2, kFamilyDecay, kFamilyWindow);
      const WaveState wave = to_wave_state(cfg, basis, state).normalize();
      UncertaintyReport report = uncertainty_product(cfg, hamiltonian, toa, wave,
                                                     "state_" + std::to_string(i));
      min_product = std::min(min_product, report.product);
      all_in_domain = all_in_domain && report.in_domain && !report.divergent_moment;
      reports.push_back(std::move(report));
    }

    // witness outside the domain: an eigenvector of T has vanishing delta T
    const SpectrumReport spectrum = spectral_decomposition(toa);
    UncertaintyReport witness;
    bool witness_found = false;
    for (Eigen::Index k = basis.dim() / 2; k < basis.dim(); ++k) {
      const WaveState candidate =
          WaveState::make(cfg, basis, spectrum.eigenvectors.col(k)).normalize();
      witness = uncertainty_product(cfg, hamiltonian, toa, candidate,
                                    "toa_eigenvector_" + std::to_string(k));
      if (!witness.in_domain) {
        witness_found = true;
        break;
      }
    }
    reports.push_back(witness);
    write_csv("uncertainty.csv", uncertainty_csv(reports, cfg, config_hash));
    write_json("uncertainty.json", uncertainty_json(reports, cfg, config_hash));

    const bool pass = min_product >= kUncertaintyFloor && all_in_domain && witness_found &&
                      witness.product < kWitnessProductCap;
    add(6, "time-energy uncertainty bound on the domain, violated outside", pass,
        "min_product=" + fmt(min_product) + " witness_product=" + fmt(witness.product) +
            " witness_delta_t=" + fmt(witness.delta_t));
  }

  void criterion_7_finite_part_limit() {
    const LimitStudy study = limit_study(config_for(0.5), {1e-2, 1e-3, 1e-4}, 21);
    write_csv("limit_study.csv", limit_csv(study, config_for(0.5), config_hash));
    const double slope = study.slope.value();
    const bool pass = slope >= kLimitSlopeLo && slope <= kLimitSlopeHi;
    add(7, "finite-part kernel tends to the periodic kernel at rate gamma", pass,
        "slope=" + fmt(slope));
  }

  void criterion_8_covariance_violation() {
    const PhysicalConfig cfg = config_for(0.5);
    const BasisSpec basis = BasisSpec::make(cfg, 64);
    const OperatorMatrix toa = toa_matrix_analytic(cfg, basis);
    const OperatorMatrix hamiltonian = hamiltonian_matrix(cfg, basis);
    bool pass = true;
    std::vector<CovarianceReport> reports;
    std::ostringstream details;
    for (double alpha : {0.5, 1.0, 2.0}) {
      const CovarianceReport report = covariance_violation(cfg, hamiltonian, toa, alpha);
      pass = pass && report.spectrum_preservation_defect < kSpectrumPreservationTol &&
             report.weyl_shift_defect >= std::abs(alpha) - kWeylShiftMargin;
      details << "alpha=" << fmt(alpha)
              << " preserve=" << fmt(report.spectrum_preservation_defect)
              << " weyl=" << fmt(report.weyl_shift_defect) << " ";
      reports.push_back(report);
    }
    write_csv("covariance.csv", covariance_csv(reports, cfg, config_hash));
    add(8, "spectrum preserved under exp(i alpha H), never Weyl-shifted", pass, details.str());
  }

  void criterion_9_spectral_structure() {
    bool pass = true;
    std::ostringstream details;
    std::vector<GammaCase> cases = kTwistedCases;
    cases.push_back({"0", 0.0});
    for (const auto& c : cases) {
      const PhysicalConfig cfg = config_for(c.gamma);
      const BasisSpec basis = BasisSpec::make(cfg, kSpectralNMax);
      const SpectrumReport report = spectral_decomposition(toa_matrix_analytic(cfg, basis));
      write_csv("spectrum_gamma_" + c.label + ".csv", spectrum_csv(report, cfg, config_hash));
      write_json("spectrum_gamma_" + c.label + ".json", spectrum_json(report, cfg, config_hash));
      pass = pass && report.pairing_defect < kPairingDefectTol &&
             std::abs(report.eigenvalue_sum) < kEigenvalueSumTol;
      details << "gamma=" << c.label << " pairing=" << fmt(report.pairing_defect)
              << " sum=" << fmt(report.eigenvalue_sum) << " ";
    }
    add(9, "spectral structure: real, plus-minus paired, zero-sum eigenvalues", pass,
        details.str());
  }

  void run_criteria_1_to_9() {
    criterion_1_oracle_equivalence();
    criterion_2_kernel_consistency();
    criterion_3_self_adjointness();
    criterion_4_commutator_convergence();
    criterion_5_zero_expectation();
    criterion_6_uncertainty();
    criterion_7_finite_part_limit();
    criterion_8_covariance_violation();
    criterion_9_spectral_structure();
  }
};

bool compare_trees(const fs::path& a, const fs::path& b, std::string& mismatch) {
  std::vector<fs::path> rel_a, rel_b;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (entry.is_regular_file()) rel_a.push_back(fs::relative(entry.path(), a));
  }
  for (const auto& entry : fs::recursive_directory_iterator(b)) {
    if (entry.is_regular_file()) rel_b.push_back(fs::relative(entry.path(), b));
  }
  std::sort(rel_a.begin(), rel_a.end());
  std::sort(rel_b.begin(), rel_b.end());
  if (rel_a != rel_b) {
    mismatch = "file sets differ";
    return false;
  }
  for (const auto& rel : rel_a) {
    if (read_text_file(a / rel) != read_text_file(b / rel)) {
      mismatch = "bytes differ in " + rel.string();
      return false;
    }
  }
  return true;
}

}  // namespace

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass; });
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  Json effective;
  effective["seed"] = options.seed;
  effective["panel_order"] = kPanelOrder;
  effective["family_decay"] = kFamilyDecay;
  effective["family_window"] = kFamilyWindow;
  const std::string hash = hash_hex(dump_json_sig17(effective, 0));

  const fs::path run_a = options.out_dir / "run_a";
  const fs::path run_b = options.out_dir / "run_b";
  fs::remove_all(run_a);
  fs::remove_all(run_b);
  fs::create_directories(run_a);
  fs::create_directories(run_b);

  Pipeline first{options, run_a, hash, {}};
  first.run_criteria_1_to_9();
  Pipeline second{options, run_b, hash, {}};
  second.run_criteria_1_to_9();

  std::vector<CriterionResult> results = first.results;
  std::string mismatch;
  const bool identical = compare_trees(run_a, run_b, mismatch);
  results.push_back({10, "determinism: identical runs produce byte-identical outputs", identical,
                     identical ? "all files byte-identical" : mismatch});
  return results;
}

}  // namespace toa
