#include "ecochain/model.hpp"

#include <algorithm>
#include <cmath>

namespace ecochain {

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::MalthusEpidemic: return "malthus";
    case Variant::LogisticEpidemic: return "logistic";
    case Variant::LogisticDiseaseFree: return "logistic-disease-free";
    case Variant::MalthusDiseaseFree: return "malthus-disease-free";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (auto v : {Variant::MalthusEpidemic, Variant::LogisticEpidemic, Variant::LogisticDiseaseFree,
                 Variant::MalthusDiseaseFree}) {
    if (variant_name(v) == name) return v;
  }
  throw ValidationError("unknown variant \"" + std::string(name) + "\"");
}

bool is_parameter_name(std::string_view name) {
  return std::find(kParameterNames.begin(), kParameterNames.end(), name) != kParameterNames.end();
}

std::string ValidationReport::message() const {
  std::string out = "invalid parameters:";
  for (const auto& v : violations) out += " " + v;
  return out;
}

ValidationReport validate_params(const Params& p, Variant variant) {
  ValidationReport report;
  auto require = [&](bool holds, const char* name) {
    if (!holds) report.violations.emplace_back(name);
  };

  for (auto name : kParameterNames) {
    if (name == "K" && is_malthus(variant)) continue;
    const double value = parameter(p, name);
    if (!std::isfinite(value)) {
      report.violations.push_back(std::string(name) + " finite");
    } else if (!(value > 0.0)) {
      report.violations.push_back(std::string(name) + ">0");
    }
  }
  // Not all prey biomass is converted into predator biomass.
  require(p.g < p.c, "g<c");
  require(p.f < p.q, "f<q");
  require(p.l < p.b, "l<b");
  require(p.nu >= p.mu, "nu>=mu");
  return report;
}

void require_valid(const Params& p, Variant variant) {
  const auto report = validate_params(p, variant);
  if (!report.ok()) throw ValidationError(report.message());
}

}  // namespace ecochain
