#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "toa/acceptance.hpp"
#include "toa/analysis.hpp"
#include "toa/reports.hpp"
#include "toa/run_config.hpp"

namespace fs = std::filesystem;
using namespace toa;

namespace {

unsigned worker_count_from_env() {
  const char* raw = std::getenv("TOA_BOX_WORKERS");
  if (raw == nullptr || *raw == '\0') return 1;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == nullptr || *end != '\0' || value < 1 || value > 256) {
    fail("ValidationError", "TOA_BOX_WORKERS must be an integer in [1, 256]");
  }
  return static_cast<unsigned>(value);
}

struct Context {
  RunConfig config;
  fs::path out;
  std::string hash;
  unsigned workers = 1;
};

Context make_context(const std::string& config_path, const std::string& out_override) {
  Context ctx;
  ctx.config = parse_config(read_text_file(config_path));
  ctx.workers = worker_count_from_env();
  ctx.out = out_override.empty() ? fs::path(ctx.config.output_dir) : fs::path(out_override);
  ctx.hash = ctx.config.config_hash();
  Json echo = ctx.config.effective();
  echo["config_hash"] = ctx.hash;
  write_text_file(ctx.out / "effective_config.json", dump_json_sig17(echo));
  return ctx;
}

void write_csv(const Context& ctx, const std::string& name, const CsvTable& table) {
  write_text_file(ctx.out / name, table.to_string());
}

void write_json_file(const Context& ctx, const std::string& name, const Json& json) {
  write_text_file(ctx.out / name, dump_json_sig17(json));
}

int cmd_kernel(const Context& ctx) {
  const KernelSelector selector = parse_kernel_selector(ctx.config.selector);
  write_csv(ctx, "kernel_" + ctx.config.selector + ".csv",
            kernel_dump(ctx.config.physical, selector, ctx.config.grid_points, ctx.config.n_terms,
                        ctx.hash));
  return 0;
}

int cmd_matrix(const Context& ctx) {
  const PhysicalConfig& cfg = ctx.config.physical;
  const BasisSpec basis = BasisSpec::make(cfg, ctx.config.n_max);
  write_csv(ctx, "matrix_position.csv",
            matrix_dump(position_matrix(cfg, basis), cfg, "analytic", ctx.hash));
  write_csv(ctx, "matrix_momentum.csv",
            matrix_dump(momentum_matrix(cfg, basis), cfg, "analytic", ctx.hash));
  write_csv(ctx, "matrix_momentum_inverse.csv",
            matrix_dump(momentum_inverse_matrix(cfg, basis), cfg, "analytic", ctx.hash));
  write_csv(ctx, "matrix_hamiltonian.csv",
            matrix_dump(hamiltonian_matrix(cfg, basis), cfg, "analytic", ctx.hash));

  const OperatorMatrix analytic = toa_matrix_analytic(cfg, basis);
  const KernelPath path = cfg.periodic() ? KernelPath::periodic : KernelPath::closed;
  const QuadratureMatrixResult quad =
      toa_matrix_quadrature(cfg, basis, path, ctx.config.panel_order, ctx.workers);
  write_csv(ctx, "matrix_toa_analytic.csv", matrix_dump(analytic, cfg, "analytic", ctx.hash));
  write_csv(ctx, "matrix_toa_quadrature.csv", matrix_dump(quad.op, cfg, "quadrature", ctx.hash));

  Json summary;
  summary["format_version"] = 1;
  summary["config_hash"] = ctx.hash;
  summary["max_abs_difference"] = (analytic.entries - quad.op.entries).cwiseAbs().maxCoeff();
  summary["hermitization_defect"] = quad.hermitization_defect;
  write_json_file(ctx, "matrix_summary.json", summary);
  return 0;
}

int cmd_spectrum(const Context& ctx) {
  const PhysicalConfig& cfg = ctx.config.physical;
  const BasisSpec basis = BasisSpec::make(cfg, ctx.config.n_max);
  const SpectrumReport report = spectral_decomposition(toa_matrix_analytic(cfg, basis));
  write_csv(ctx, "spectrum.csv", spectrum_csv(report, cfg, ctx.hash));
  write_json_file(ctx, "spectrum.json", spectrum_json(report, cfg, ctx.hash));
  return 0;
}

int cmd_commutator(const Context& ctx) {
  const PhysicalConfig& cfg = ctx.config.physical;
  int reference_length = 0;
  for (int n : ctx.config.n_max_sequence) reference_length = std::max(reference_length, n / 2);
  const CanonicalState reference =
      seeded_canonical_state(cfg, ctx.config.seed, std::max(reference_length * 16, 1024),
                             ctx.config.s, 16);
  const ConvergenceStudy study = convergence_study(cfg, reference, ctx.config.n_max_sequence);
  write_csv(ctx, "commutator_convergence.csv", convergence_csv(study, cfg, ctx.hash));
  write_json_file(ctx, "commutator_convergence.json", convergence_json(study, cfg, ctx.hash));

  const int populated = ctx.config.n_max_sequence.back() / 2;
  const CanonicalState truncated = truncate_canonical_state(cfg, reference, populated);
  write_json_file(ctx, "canonical_state.json",
                  canonical_state_json(cfg, truncated, ctx.config.n_max_sequence.back(),
                                       ctx.config.seed, ctx.config.s, ctx.hash));
  return 0;
}

int cmd_uncertainty(const Context& ctx) {
  const PhysicalConfig& cfg = ctx.config.physical;
  const BasisSpec basis = BasisSpec::make(cfg, ctx.config.n_max);
  const OperatorMatrix toa = toa_matrix_analytic(cfg, basis);
  const OperatorMatrix hamiltonian = hamiltonian_matrix(cfg, basis);
  std::vector<UncertaintyReport> reports;
  for (int i = 0; i < ctx.config.state_count; ++i) {
    const CanonicalState state = seeded_canonical_state(
        cfg, ctx.config.seed + static_cast<std::uint64_t>(i), ctx.config.n_max / 2, ctx.config.s,
        16);
    const WaveState wave = to_wave_state(cfg, basis, state).normalize();
    reports.push_back(
        uncertainty_product(cfg, hamiltonian, toa, wave, "state_" + std::to_string(i)));
  }
  write_csv(ctx, "uncertainty.csv", uncertainty_csv(reports, cfg, ctx.hash));
  write_json_file(ctx, "uncertainty.json", uncertainty_json(reports, cfg, ctx.hash));
  return 0;
}

int cmd_limit(const Context& ctx) {
  const LimitStudy study =
      limit_study(ctx.config.physical, ctx.config.gammas, ctx.config.grid_points);
  write_csv(ctx, "limit_study.csv", limit_csv(study, ctx.config.physical, ctx.hash));
  write_json_file(ctx, "limit_study.json", limit_json(study, ctx.config.physical, ctx.hash));
  return 0;
}

int cmd_covariance(const Context& ctx) {
  const PhysicalConfig& cfg = ctx.config.physical;
  const BasisSpec basis = BasisSpec::make(cfg, ctx.config.n_max);
  const OperatorMatrix toa = toa_matrix_analytic(cfg, basis);
  const OperatorMatrix hamiltonian = hamiltonian_matrix(cfg, basis);
  std::vector<CovarianceReport> reports;
  for (double alpha : ctx.config.alphas) {
    reports.push_back(covariance_violation(cfg, hamiltonian, toa, alpha));
  }
  write_csv(ctx, "covariance.csv", covariance_csv(reports, cfg, ctx.hash));
  write_json_file(ctx, "covariance.json", covariance_json(reports, cfg, ctx.hash));
  return 0;
}

int cmd_hsnorm(const Context& ctx) {
  const KernelSelector selector = parse_kernel_selector(ctx.config.selector);
  KernelPath path;
  if (selector == KernelSelector::closed) {
    path = KernelPath::closed;
  } else if (selector == KernelSelector::periodic) {
    path = KernelPath::periodic;
  } else {
    fail("ValidationError", "hsnorm supports the closed and periodic kernels");
  }
  Json json;
  json["format_version"] = 1;
  json["config_hash"] = ctx.hash;
  json["selector"] = ctx.config.selector;
  json["hs_norm"] = hs_norm(ctx.config.physical, path, ctx.config.panel_order);
  write_json_file(ctx, "hsnorm.json", json);
  return 0;
}

int cmd_report(const Context& ctx) {
  AcceptanceOptions options;
  options.out_dir = ctx.out;
  options.seed = ctx.config.seed;
  options.workers = ctx.workers;
  const std::vector<CriterionResult> results = run_acceptance(options);

  Json summary;
  summary["format_version"] = 1;
  summary["config_hash"] = ctx.hash;
  Json rows = Json::array();
  for (const auto& r : results) {
    Json row;
    row["id"] = r.id;
    row["name"] = r.name;
    row["pass"] = r.pass;
    row["details"] = r.details;
    rows.push_back(std::move(row));
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " ("
              << r.details << ")\n";
  }
  summary["criteria"] = std::move(rows);
  summary["all_passed"] = all_passed(results);
  write_json_file(ctx, "summary.json", summary);
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toa-box: confined time-of-arrival operator toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  int (*handler)(const Context&) = nullptr;

  auto add_subcommand = [&](const std::string& name, const std::string& description,
                            int (*fn)(const Context&)) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_override, "output directory (overrides output_dir)");
    sub->callback([&handler, fn]() { handler = fn; });
    return sub;
  };

  add_subcommand("kernel", "dump a kernel on a grid", cmd_kernel);
  add_subcommand("matrix", "dump operator matrices, both construction paths", cmd_matrix);
  add_subcommand("spectrum", "eigenvalues of the time-of-arrival matrix", cmd_spectrum);
  add_subcommand("commutator", "commutator residual convergence study", cmd_commutator);
  add_subcommand("uncertainty", "batch uncertainty products", cmd_uncertainty);
  add_subcommand("limit", "finite-part kernel limit study", cmd_limit);
  add_subcommand("covariance", "imprimitivity covariance violation", cmd_covariance);
  add_subcommand("hsnorm", "Hilbert-Schmidt norm of a kernel", cmd_hsnorm);
  add_subcommand("report", "full verification suite with pass/fail summary", cmd_report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Context ctx = make_context(config_path, out_override);
    return handler(ctx);
  } catch (const ToaError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "InternalError: " << e.what() << "\n";
    return 2;
  }
}
