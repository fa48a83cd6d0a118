#include "toa/reports.hpp"

#include "toa/kernels.hpp"

namespace toa {

namespace {

constexpr int kFormatVersion = 1;

}  // namespace

std::vector<std::string> dump_header(const PhysicalConfig& cfg, const std::string& config_hash,
                                     const std::string& extra) {
  std::vector<std::string> lines;
  lines.push_back("gamma=" + format_sig17(cfg.gamma) + " l=" + format_sig17(cfg.l) +
                  " mu=" + format_sig17(cfg.mu) + " hbar=" + format_sig17(cfg.hbar));
  lines.push_back("conventions: heaviside_zero=0.5 sgn_zero=0 series=symmetric_pairs");
  lines.push_back("config_hash=" + config_hash +
                  " format_version=" + std::to_string(kFormatVersion));
  if (!extra.empty()) lines.push_back(extra);
  return lines;
}

KernelSelector parse_kernel_selector(const std::string& name) {
  if (name == "closed") return KernelSelector::closed;
  if (name == "series") return KernelSelector::series;
  if (name == "periodic") return KernelSelector::periodic;
  if (name == "finite_part") return KernelSelector::finite_part;
  if (name == "zero_mode") return KernelSelector::zero_mode;
  fail("ValidationError", "unknown kernel selector '" + name + "'");
}

std::string kernel_selector_name(KernelSelector selector) {
  switch (selector) {
    case KernelSelector::closed: return "closed";
    case KernelSelector::series: return "series";
    case KernelSelector::periodic: return "periodic";
    case KernelSelector::finite_part: return "finite_part";
    case KernelSelector::zero_mode: return "zero_mode";
  }
  fail("ValidationError", "bad kernel selector");
}

Complex eval_kernel(const PhysicalConfig& cfg, KernelSelector selector, double q, double q_prime,
                    int n_terms) {
  switch (selector) {
    case KernelSelector::closed: return kernel_closed(cfg, q, q_prime);
    case KernelSelector::series: return kernel_series(cfg, q, q_prime, n_terms);
    case KernelSelector::periodic: return kernel_periodic(cfg, q, q_prime);
    case KernelSelector::finite_part: return kernel_finite_part(cfg, q, q_prime);
    case KernelSelector::zero_mode: return zero_mode_term(cfg, q, q_prime);
  }
  fail("ValidationError", "bad kernel selector");
}

CsvTable kernel_dump(const PhysicalConfig& cfg, KernelSelector selector, int grid_points,
                     int n_terms, const std::string& config_hash) {
  if (grid_points < 2) fail("ValidationError", "kernel dump needs at least two grid points");
  CsvTable table;
  table.header_comments =
      dump_header(cfg, config_hash, "kernel=" + kernel_selector_name(selector));
  table.columns = {"q", "q_prime", "re", "im"};
  for (int a = 0; a < grid_points; ++a) {
    const double q = -cfg.l + 2.0 * cfg.l * a / (grid_points - 1);
    for (int b = 0; b < grid_points; ++b) {
      const double q_prime = -cfg.l + 2.0 * cfg.l * b / (grid_points - 1);
      const KernelPoint point{q, q_prime, eval_kernel(cfg, selector, q, q_prime, n_terms)};
      table.rows.push_back({format_sig17(point.q), format_sig17(point.q_prime),
                            format_sig17(point.value.real()), format_sig17(point.value.imag())});
    }
  }
  return table;
}

CsvTable matrix_dump(const OperatorMatrix& op, const PhysicalConfig& cfg, const std::string& path,
                     const std::string& config_hash) {
  CsvTable table;
  table.header_comments = dump_header(
      cfg, config_hash,
      "label=" + op.label + " n_max=" + std::to_string(op.basis.n_max) + " path=" + path);
  table.columns = {"row_index", "col_index", "re", "im"};
  for (Eigen::Index a = 0; a < op.entries.rows(); ++a) {
    for (Eigen::Index b = 0; b < op.entries.cols(); ++b) {
      table.rows.push_back({std::to_string(op.basis.indices[static_cast<std::size_t>(a)]),
                            std::to_string(op.basis.indices[static_cast<std::size_t>(b)]),
                            format_sig17(op.entries(a, b).real()),
                            format_sig17(op.entries(a, b).imag())});
    }
  }
  return table;
}

CsvTable spectrum_csv(const SpectrumReport& report, const PhysicalConfig& cfg,
                      const std::string& config_hash) {
  CsvTable table;
  table.header_comments = dump_header(
      cfg, config_hash,
      "pairing_defect=" + format_sig17(report.pairing_defect) +
          " eigenvalue_sum=" + format_sig17(report.eigenvalue_sum) +
          " reconstruction_defect=" + format_sig17(report.reconstruction_defect));
  table.columns = {"k", "eigenvalue"};
  for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) {
    table.rows.push_back({std::to_string(k), format_sig17(report.eigenvalues[k])});
  }
  return table;
}

Json spectrum_json(const SpectrumReport& report, const PhysicalConfig& cfg,
                   const std::string& config_hash) {
  Json json;
  json["format_version"] = kFormatVersion;
  json["config_hash"] = config_hash;
  json["gamma"] = cfg.gamma;
  json["pairing_defect"] = report.pairing_defect;
  json["eigenvalue_sum"] = report.eigenvalue_sum;
  json["reconstruction_defect"] = report.reconstruction_defect;
  Json values = Json::array();
  for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) {
    values.push_back(report.eigenvalues[k]);
  }
  json["eigenvalues"] = std::move(values);
  return json;
}

CsvTable zero_expectation_csv(const ZeroExpectationReport& report, const PhysicalConfig& cfg,
                              const std::string& config_hash) {
  CsvTable table;
  table.header_comments =
      dump_header(cfg, config_hash, "max_abs=" + format_sig17(report.max_abs));
  table.columns = {"kind", "n", "expectation"};
  for (const auto& entry : report.entries) {
    table.rows.push_back({entry.kind, std::to_string(entry.n), format_sig17(entry.expectation)});
  }
  return table;
}

Json zero_expectation_json(const ZeroExpectationReport& report, const PhysicalConfig& cfg,
                           const std::string& config_hash) {
  Json json;
  json["format_version"] = kFormatVersion;
  json["config_hash"] = config_hash;
  json["gamma"] = cfg.gamma;
  json["max_abs"] = report.max_abs;
  Json rows = Json::array();
  for (const auto& entry : report.entries) {
    Json row;
    row["kind"] = entry.kind;
    row["n"] = entry.n;
    row["expectation"] = entry.expectation;
    rows.push_back(std::move(row));
  }
  json["entries"] = std::move(rows);
  return json;
}

CsvTable uncertainty_csv(const std::vector<UncertaintyReport>& reports, const PhysicalConfig& cfg,
                         const std::string& config_hash) {
  CsvTable table;
  table.header_comments = dump_header(cfg, config_hash);
  table.columns = {"state_id", "delta_t", "delta_e", "product", "in_domain", "divergent_moment"};
  for (const auto& r : reports) {
    table.rows.push_back({r.state_id, format_sig17(r.delta_t), format_sig17(r.delta_e),
                          format_sig17(r.product), r.in_domain ? "1" : "0",
                          r.divergent_moment ? "1" : "0"});
  }
  return table;
}

Json uncertainty_json(const std::vector<UncertaintyReport>& reports, const PhysicalConfig& cfg,
                      const std::string& config_hash) {
  Json json;
  json["format_version"] = kFormatVersion;
  json["config_hash"] = config_hash;
  json["gamma"] = cfg.gamma;
  Json rows = Json::array();
  for (const auto& r : reports) {
    Json row;
    row["state_id"] = r.state_id;
    row["delta_t"] = r.delta_t;
    row["delta_e"] = r.delta_e;
    row["product"] = r.product;
    row["in_domain"] = r.in_domain;
    row["divergent_moment"] = r.divergent_moment;
    rows.push_back(std::move(row));
  }
  json["states"] = std::move(rows);
  return json;
}

CsvTable limit_csv(const LimitStudy& study, const PhysicalConfig& cfg,
                   const std::string& config_hash) {
  CsvTable table;
  table.header_comments = dump_header(
      cfg, config_hash,
      study.slope ? "slope=" + format_sig17(*study.slope) : std::string("slope=not-available"));
  table.columns = {"gamma", "sup_error"};
  for (const auto& row : study.rows) {
    table.rows.push_back({format_sig17(row.gamma), format_sig17(row.sup_error)});
  }
  return table;
}

Json limit_json(const LimitStudy& study, const PhysicalConfig&,
                const std::string& config_hash) {
  Json json;
  json["format_version"] = kFormatVersion;
  json["config_hash"] = config_hash;
  if (study.slope) {
    json["slope"] = *study.slope;
  } else {
    json["slope"] = nullptr;
  }
  Json rows = Json::array();
  for (const auto& row : study.rows) {
    Json item;
    item["gamma"] = row.gamma;
    item["sup_error"] = row.sup_error;
    rows.push_back(std::move(item));
  }
  json["rows"] = std::move(rows);
  return json;
}

CsvTable convergence_csv(const ConvergenceStudy& study, const PhysicalConfig& cfg,
                         const std::string& config_hash) {
  CsvTable table;
  table.header_comments = dump_header(
      cfg, config_hash,
      study.slope ? "slope=" + format_sig17(*study.slope) : std::string("slope=not-available"));
  table.columns = {"n_max", "residual"};
  for (const auto& row : study.rows) {
    table.rows.push_back({std::to_string(row.n_max), format_sig17(row.residual)});
  }
  return table;
}

Json convergence_json(const ConvergenceStudy& study, const PhysicalConfig& cfg,
                      const std::string& config_hash) {
  Json json;
  json["format_version"] = kFormatVersion;
  json["config_hash"] = config_hash;
  json["gamma"] = cfg.gamma;
  if (study.slope) {
    json["slope"] = *study.slope;
  } else {
    json["slope"] = nullptr;
  }
  Json rows = Json::array();
  for (const auto& row : study.rows) {
    Json item;
    item["n_max"] = row.n_max;
    item["residual"] = row.residual;
    rows.push_back(std::move(item));
  }
  json["rows"] = std::move(rows);
  return json;
}

CsvTable covariance_csv(const std::vector<CovarianceReport>& reports, const PhysicalConfig& cfg,
                        const std::string& config_hash) {
  CsvTable table;
  table.header_comments = dump_header(cfg, config_hash);
  table.columns = {"alpha", "spectrum_preservation_defect", "weyl_shift_defect"};
  for (const auto& r : reports) {
    table.rows.push_back({format_sig17(r.alpha), format_sig17(r.spectrum_preservation_defect),
                          format_sig17(r.weyl_shift_defect)});
  }
  return table;
}

Json covariance_json(const std::vector<CovarianceReport>& reports, const PhysicalConfig& cfg,
                     const std::string& config_hash) {
  Json json;
  json["format_version"] = kFormatVersion;
  json["config_hash"] = config_hash;
  json["gamma"] = cfg.gamma;
  Json rows = Json::array();
  for (const auto& r : reports) {
    Json item;
    item["alpha"] = r.alpha;
    item["spectrum_preservation_defect"] = r.spectrum_preservation_defect;
    item["weyl_shift_defect"] = r.weyl_shift_defect;
    rows.push_back(std::move(item));
  }
  json["rows"] = std::move(rows);
  return json;
}

Json canonical_state_json(const PhysicalConfig& cfg, const CanonicalState& state, int n_max,
                          std::uint64_t seed, double s, const std::string& config_hash) {
  Json json;
  json["format_version"] = kFormatVersion;
  json["config_hash"] = config_hash;
  json["gamma"] = cfg.gamma;
  json["n_max"] = n_max;
  json["seed"] = seed;
  json["s"] = s;
  Json coeffs = Json::array();
  for (Eigen::Index i = 0; i < state.span_coeffs.size(); ++i) {
    coeffs.push_back(Json::array({state.span_coeffs[i].real(), state.span_coeffs[i].imag()}));
  }
  json["coeffs"] = std::move(coeffs);
  json["constraint_residual"] = state.constraint_residual;
  return json;
}

}  // namespace toa
