#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "toa/reports.hpp"
#include "toa/run_config.hpp"

using namespace toa;

TEST_CASE("parse_config: defaults, required keys, rejection") {
  CHECK_THROWS_WITH_AS(parse_config("{}"), doctest::Contains("gamma required"), ToaError);

  const RunConfig config = parse_config(R"({"gamma":0.5})");
  CHECK(config.physical.gamma == 0.5);
  CHECK(config.physical.l == 1.0);
  CHECK(config.physical.mu == 1.0);
  CHECK(config.physical.hbar == 1.0);
  CHECK(config.n_max == 64);
  CHECK(config.panel_order == 64);
  CHECK(config.m_points == 513);
  CHECK(config.seed == 42);

  CHECK_THROWS_WITH_AS(parse_config(R"({"gamma":0.5,"n_max":-3})"), doctest::Contains("n_max"),
                       ToaError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"gamma":0.5,"m_points":512})"),
                       doctest::Contains("m_points"), ToaError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"gamma":0.5,"frequency":3})"),
                       doctest::Contains("UnknownKey"), ToaError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"gamma":1.0})"), doctest::Contains("GammaOutOfRange"),
                       ToaError);
  CHECK_THROWS_WITH_AS(parse_config("{gamma:"), doctest::Contains("ParseError"), ToaError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"gamma":0.5,"panel_order":4000})"),
                       doctest::Contains("QuadratureBudgetExceeded"), ToaError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"gamma":0.5,"s":1.0})"), doctest::Contains("s must"),
                       ToaError);
}

TEST_CASE("config hash is stable and sensitive") {
  const RunConfig a = parse_config(R"({"gamma":0.5})");
  const RunConfig b = parse_config(R"({"gamma":0.5})");
  const RunConfig c = parse_config(R"({"gamma":0.5,"n_max":32})");
  CHECK(a.config_hash() == b.config_hash());
  CHECK(a.config_hash() != c.config_hash());
  CHECK(a.config_hash().size() == 16);
}

TEST_CASE("seventeen significant digits round-trip") {
  for (double value : {0.1, -0.3183098861837907, 2.0754693058816891e-05, 1.0 / 3.0, 12345.678901}) {
    const std::string text = format_sig17(value);
    CHECK(std::strtod(text.c_str(), nullptr) == value);
  }
}

TEST_CASE("json emitter: deterministic, parseable, 17 digits") {
  Json json;
  json["b_first"] = 1.0 / 3.0;
  json["a_second"] = Json::array({0.1, 2, true, "text"});
  json["nested"] = Json::object();
  json["nested"]["x"] = -1.5e-7;

  const std::string once = dump_json_sig17(json);
  const std::string twice = dump_json_sig17(json);
  CHECK(once == twice);
  CHECK(once.find("0.33333333333333331") != std::string::npos);

  const Json parsed = Json::parse(once);
  CHECK(parsed["b_first"].get<double>() == 1.0 / 3.0);
  CHECK(parsed["nested"]["x"].get<double>() == -1.5e-7);
  // insertion order preserved
  CHECK(once.find("b_first") < once.find("a_second"));
}

TEST_CASE("csv table layout") {
  CsvTable table;
  table.header_comments = {"alpha=1", "conventions: none"};
  table.columns = {"x", "y"};
  table.rows = {{"1", "2"}, {"3", "4"}};
  const std::string text = table.to_string();
  CHECK(text == "# alpha=1\n# conventions: none\nx,y\n1,2\n3,4\n");
}

TEST_CASE("kernel selector parsing") {
  CHECK(parse_kernel_selector("closed") == KernelSelector::closed);
  CHECK(parse_kernel_selector("finite_part") == KernelSelector::finite_part);
  CHECK(kernel_selector_name(KernelSelector::zero_mode) == "zero_mode");
  CHECK_THROWS_WITH_AS(parse_kernel_selector("cubic"), doctest::Contains("ValidationError"),
                       ToaError);
}

TEST_CASE("canonical state export schema") {
  PhysicalConfig cfg;
  cfg.gamma = 0.5;
  const CanonicalState state = seeded_canonical_state(cfg, 42, 8, 3.0, 8);
  const Json json = canonical_state_json(cfg, state, 16, 42, 3.0, "deadbeef00000000");
  CHECK(json["gamma"].get<double>() == 0.5);
  CHECK(json["n_max"].get<int>() == 16);
  CHECK(json["seed"].get<std::uint64_t>() == 42);
  CHECK(json["s"].get<double>() == 3.0);
  CHECK(json["coeffs"].size() == 8);
  CHECK(json["coeffs"][0].size() == 2);
  CHECK(json["constraint_residual"].get<double>() < 1e-12);
  CHECK(json["format_version"].get<int>() == 1);
}

TEST_CASE("matrix and kernel dumps carry the config hash") {
  PhysicalConfig cfg;
  cfg.gamma = 0.5;
  const BasisSpec basis = BasisSpec::make(cfg, 2);
  const CsvTable dump = matrix_dump(position_matrix(cfg, basis), cfg, "analytic", "cafe0123cafe0123");
  bool found = false;
  for (const auto& line : dump.header_comments) {
    if (line.find("config_hash=cafe0123cafe0123") != std::string::npos) found = true;
  }
  CHECK(found);
  CHECK(dump.rows.size() == 25);

  const CsvTable kernel = kernel_dump(cfg, KernelSelector::closed, 5, 10, "cafe0123cafe0123");
  CHECK(kernel.rows.size() == 25);
  CHECK(kernel.columns == std::vector<std::string>{"q", "q_prime", "re", "im"});
}
