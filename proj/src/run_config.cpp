#include "toa/run_config.hpp"

#include <cmath>

namespace toa {

namespace {

double require_number(const Json& value, const std::string& key) {
  if (!value.is_number()) fail("ValidationError", key + " must be a number");
  return value.get<double>();
}

int require_int(const Json& value, const std::string& key) {
  if (!value.is_number_integer()) fail("ValidationError", key + " must be an integer");
  return value.get<int>();
}

std::vector<double> require_number_array(const Json& value, const std::string& key) {
  if (!value.is_array() || value.empty()) fail("ValidationError", key + " must be a non-empty array");
  std::vector<double> out;
  for (const auto& item : value) out.push_back(require_number(item, key));
  return out;
}

}  // namespace

Json RunConfig::effective() const {
  Json json;
  json["gamma"] = physical.gamma;
  json["l"] = physical.l;
  json["mu"] = physical.mu;
  json["hbar"] = physical.hbar;
  json["n_max"] = n_max;
  json["panel_order"] = panel_order;
  json["m_points"] = m_points;
  json["seed"] = seed;
  json["output_dir"] = output_dir;
  json["selector"] = selector;
  json["n_terms"] = n_terms;
  json["grid_points"] = grid_points;
  json["state_count"] = state_count;
  json["s"] = s;
  json["alphas"] = alphas;
  json["gammas"] = gammas;
  json["n_max_sequence"] = n_max_sequence;
  return json;
}

std::string RunConfig::config_hash() const { return hash_hex(dump_json_sig17(effective(), 0)); }

RunConfig parse_config(const std::string& text) {
  Json document;
  try {
    document = Json::parse(text);
  } catch (const std::exception& e) {
    fail("ParseError", e.what());
  }
  if (!document.is_object()) fail("ParseError", "configuration must be a JSON object");

  RunConfig config;
  bool gamma_seen = false;
  for (auto it = document.begin(); it != document.end(); ++it) {
    const std::string& key = it.key();
    const Json& value = it.value();
    if (key == "gamma") {
      config.physical.gamma = require_number(value, key);
      gamma_seen = true;
    } else if (key == "l") {
      config.physical.l = require_number(value, key);
    } else if (key == "mu") {
      config.physical.mu = require_number(value, key);
    } else if (key == "hbar") {
      config.physical.hbar = require_number(value, key);
    } else if (key == "n_max") {
      config.n_max = require_int(value, key);
      if (config.n_max < 1) fail("ValidationError", "n_max must be >= 1");
    } else if (key == "panel_order") {
      config.panel_order = require_int(value, key);
      if (config.panel_order < 8) fail("ValidationError", "panel_order must be >= 8");
      if (config.panel_order > 256) fail("QuadratureBudgetExceeded", "panel_order capped at 256");
    } else if (key == "m_points") {
      config.m_points = require_int(value, key);
      if (config.m_points < 17 || config.m_points % 2 == 0) {
        fail("ValidationError", "m_points must be odd and >= 17");
      }
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer()) {
        fail("ValidationError", "seed must be a non-negative integer");
      }
      const auto seed = value.get<long long>();
      if (seed < 0) fail("ValidationError", "seed must be a non-negative integer");
      config.seed = static_cast<std::uint64_t>(seed);
    } else if (key == "output_dir") {
      if (!value.is_string()) fail("ValidationError", "output_dir must be a string");
      config.output_dir = value.get<std::string>();
    } else if (key == "selector") {
      if (!value.is_string()) fail("ValidationError", "selector must be a string");
      config.selector = value.get<std::string>();
    } else if (key == "n_terms") {
      config.n_terms = require_int(value, key);
      if (config.n_terms < 1) fail("ValidationError", "n_terms must be >= 1");
    } else if (key == "grid_points") {
      config.grid_points = require_int(value, key);
      if (config.grid_points < 2) fail("ValidationError", "grid_points must be >= 2");
    } else if (key == "state_count") {
      config.state_count = require_int(value, key);
      if (config.state_count < 1) fail("ValidationError", "state_count must be >= 1");
    } else if (key == "s") {
      config.s = require_number(value, key);
      if (config.s < 2.5) fail("ValidationError", "s must be >= 2.5 for finite energy moments");
    } else if (key == "alphas") {
      config.alphas = require_number_array(value, key);
    } else if (key == "gammas") {
      config.gammas = require_number_array(value, key);
    } else if (key == "n_max_sequence") {
      config.n_max_sequence.clear();
      if (!value.is_array() || value.empty()) {
        fail("ValidationError", "n_max_sequence must be a non-empty array");
      }
      for (const auto& item : value) {
        const int n = require_int(item, key);
        if (n < 2) fail("ValidationError", "n_max_sequence entries must be >= 2");
        config.n_max_sequence.push_back(n);
      }
    } else {
      fail("UnknownKey", "unknown configuration key '" + key + "'");
    }
  }
  if (!gamma_seen) fail("ValidationError", "gamma required");
  validate_config(config.physical);
  return config;
}

}  // namespace toa
