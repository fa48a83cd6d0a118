#pragma once

#include "toa/analysis.hpp"
#include "toa/io.hpp"

namespace toa {

/// Header comment lines shared by all CSV dumps: configuration echo,
/// convention flags and the effective-config hash.
std::vector<std::string> dump_header(const PhysicalConfig& cfg, const std::string& config_hash,
                                     const std::string& extra = "");

enum class KernelSelector { closed, series, periodic, finite_part, zero_mode };

KernelSelector parse_kernel_selector(const std::string& name);
std::string kernel_selector_name(KernelSelector selector);

Complex eval_kernel(const PhysicalConfig& cfg, KernelSelector selector, double q, double q_prime,
                    int n_terms);

/// Rows q, q_prime, re, im over a uniform grid including endpoints.
CsvTable kernel_dump(const PhysicalConfig& cfg, KernelSelector selector, int grid_points,
                     int n_terms, const std::string& config_hash);

/// Rows row_index, col_index, re, im; path is "analytic" or "quadrature".
CsvTable matrix_dump(const OperatorMatrix& op, const PhysicalConfig& cfg, const std::string& path,
                     const std::string& config_hash);

CsvTable spectrum_csv(const SpectrumReport& report, const PhysicalConfig& cfg,
                      const std::string& config_hash);
Json spectrum_json(const SpectrumReport& report, const PhysicalConfig& cfg,
                   const std::string& config_hash);

CsvTable zero_expectation_csv(const ZeroExpectationReport& report, const PhysicalConfig& cfg,
                              const std::string& config_hash);
Json zero_expectation_json(const ZeroExpectationReport& report, const PhysicalConfig& cfg,
                           const std::string& config_hash);

CsvTable uncertainty_csv(const std::vector<UncertaintyReport>& reports, const PhysicalConfig& cfg,
                         const std::string& config_hash);
Json uncertainty_json(const std::vector<UncertaintyReport>& reports, const PhysicalConfig& cfg,
                      const std::string& config_hash);

CsvTable limit_csv(const LimitStudy& study, const PhysicalConfig& cfg,
                   const std::string& config_hash);
Json limit_json(const LimitStudy& study, const PhysicalConfig& cfg,
                const std::string& config_hash);
CsvTable convergence_csv(const ConvergenceStudy& study, const PhysicalConfig& cfg,
                         const std::string& config_hash);
Json convergence_json(const ConvergenceStudy& study, const PhysicalConfig& cfg,
                      const std::string& config_hash);
CsvTable covariance_csv(const std::vector<CovarianceReport>& reports, const PhysicalConfig& cfg,
                        const std::string& config_hash);
Json covariance_json(const std::vector<CovarianceReport>& reports, const PhysicalConfig& cfg,
                     const std::string& config_hash);

Json canonical_state_json(const PhysicalConfig& cfg, const CanonicalState& state, int n_max,
                          std::uint64_t seed, double s, const std::string& config_hash);

}  // namespace toa
