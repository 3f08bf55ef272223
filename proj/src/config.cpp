#include "ecochain/config.hpp"

#include <array>
#include <cmath>
#include <set>

#include <json.hpp>

namespace ecochain {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 16> kOtherKeys = {
    "variant", "mu0", "P0", "S0", "I0", "V0", "rtol", "atol", "h0", "hmax", "tmax",
    "sweep_param", "sweep_lo", "sweep_hi", "sweep_n", "out"};

bool is_known_key(std::string_view key) {
  if (key == "svg" || is_parameter_name(key)) return true;
  for (auto k : kOtherKeys) {
    if (k == key) return true;
  }
  return false;
}

double number(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError("config key \"" + key + "\": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError("config key \"" + key + "\": value is not finite");
  return x;
}

std::string text(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ValidationError("config key \"" + key + "\": expected a string");
  return v.get<std::string>();
}

}  // namespace

RunConfig parse_config(std::string_view input) {
  std::set<std::string> seen;
  std::string duplicate;
  bool nested = false;
  auto callback = [&](int depth, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::key && depth == 1) {
      auto key = parsed.get<std::string>();
      if (!seen.insert(key).second && duplicate.empty()) duplicate = key;
    }
    if ((event == json::parse_event_t::object_start || event == json::parse_event_t::array_start) && depth > 0) {
      nested = true;
    }
    return true;
  };

  json j;
  try {
    j = json::parse(input.begin(), input.end(), callback);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  if (nested) throw ValidationError("config must be a flat object (no nested values)");
  if (!duplicate.empty()) throw ValidationError("config key \"" + duplicate + "\" appears more than once");
  for (const auto& item : j.items()) {
    if (!is_known_key(item.key())) throw ValidationError("unknown config key \"" + item.key() + "\"");
  }

  RunConfig cfg;
  if (j.contains("variant")) {
    cfg.variant = parse_variant(text(j, "variant"));
  } else {
    cfg.variant = j.contains("K") ? Variant::LogisticEpidemic : Variant::MalthusEpidemic;
  }

  for (auto name : kParameterNames) {
    const std::string key(name);
    if (key == "nu") continue;
    if (key == "K" && is_malthus(cfg.variant) && !j.contains("K")) continue;
    if (!j.contains(key)) throw ValidationError("missing config key \"" + key + "\"");
    parameter(cfg.params, name) = number(j, key);
  }
  if (j.contains("nu") && j.contains("mu0")) {
    throw ValidationError("config keys \"nu\" and \"mu0\" are mutually exclusive");
  } else if (j.contains("nu")) {
    cfg.params.nu = number(j, "nu");
  } else if (j.contains("mu0")) {
    const double mu0 = number(j, "mu0");
    if (mu0 < 0.0) throw ValidationError("config key \"mu0\": must be >= 0");
    cfg.params = with_disease_mortality(cfg.params, mu0);
  } else {
    throw ValidationError("missing config key \"nu\" (or \"mu0\")");
  }
  require_valid(cfg.params, cfg.variant);

  const std::array<const char*, 4> state_keys = {"P0", "S0", "I0", "V0"};
  if (is_disease_free(cfg.variant)) cfg.initial[kI] = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const std::string key = state_keys[static_cast<std::size_t>(i)];
    if (j.contains(key)) cfg.initial[i] = number(j, key);
  }
  detail::check_state(cfg.variant, cfg.initial);

  if (j.contains("rtol")) cfg.integrator.rtol = number(j, "rtol");
  if (j.contains("atol")) cfg.integrator.atol = number(j, "atol");
  if (j.contains("h0")) cfg.integrator.h0 = number(j, "h0");
  if (j.contains("hmax")) cfg.integrator.hmax = number(j, "hmax");
  if (j.contains("tmax")) cfg.integrator.tmax = number(j, "tmax");
  cfg.integrator.validate();

  if (j.contains("sweep_param")) {
    cfg.sweep_param = text(j, "sweep_param");
    if (!is_parameter_name(*cfg.sweep_param)) {
      throw ValidationError("config key \"sweep_param\": unknown parameter \"" + *cfg.sweep_param + "\"");
    }
  }
  if (j.contains("sweep_lo")) cfg.sweep_lo = number(j, "sweep_lo");
  if (j.contains("sweep_hi")) cfg.sweep_hi = number(j, "sweep_hi");
  if (j.contains("sweep_n")) {
    const auto& v = j.at("sweep_n");
    if (!v.is_number_integer()) throw ValidationError("config key \"sweep_n\": expected an integer");
    cfg.sweep_n = v.get<int>();
  }
  if (j.contains("out")) cfg.out = text(j, "out");
  if (j.contains("svg")) cfg.svg = text(j, "svg");
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  json j = json::object();
  j["variant"] = std::string(variant_name(cfg.variant));
  for (auto name : kParameterNames) {
    if (name == "K" && is_malthus(cfg.variant) && cfg.params.K == 0.0) continue;
    j[std::string(name)] = parameter(cfg.params, name);
  }
  j["P0"] = cfg.initial[kP];
  j["S0"] = cfg.initial[kS];
  j["I0"] = cfg.initial[kI];
  j["V0"] = cfg.initial[kV];
  j["rtol"] = cfg.integrator.rtol;
  j["atol"] = cfg.integrator.atol;
  j["h0"] = cfg.integrator.h0;
  j["hmax"] = cfg.integrator.hmax;
  j["tmax"] = cfg.integrator.tmax;
  if (cfg.sweep_param) j["sweep_param"] = *cfg.sweep_param;
  if (cfg.sweep_lo) j["sweep_lo"] = *cfg.sweep_lo;
  if (cfg.sweep_hi) j["sweep_hi"] = *cfg.sweep_hi;
  if (cfg.sweep_n) j["sweep_n"] = *cfg.sweep_n;
  if (cfg.out) j["out"] = *cfg.out;
  if (cfg.svg) j["svg"] = *cfg.svg;
  return j.dump(2) + "\n";
}

}  // namespace ecochain
