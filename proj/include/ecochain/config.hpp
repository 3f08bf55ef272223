#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ecochain/model.hpp"
#include "ecochain/simulate.hpp"

namespace ecochain {

// Flat JSON run configuration. Keys:
//   variant                       "malthus" | "logistic" | "logistic-disease-free" | "malthus-disease-free"
//   g f c l q b beta tau nu mu r K model parameters ("mu0" may replace "nu": nu = mu + mu0)
//   P0 S0 I0 V0                   initial state
//   rtol atol h0 hmax tmax        integrator settings
//   sweep_param sweep_lo sweep_hi sweep_n
//   out svg                       output paths
// Without "variant", a config lacking K is read as Malthus and one with K
// as logistic.
struct RunConfig {
  Variant variant = Variant::LogisticEpidemic;
  Params params;
  Vec4 initial{0.1, 0.5, 0.2, 0.5};
  IntegratorConfig integrator;
  std::optional<std::string> sweep_param;
  std::optional<double> sweep_lo;
  std::optional<double> sweep_hi;
  std::optional<int> sweep_n;
  std::optional<std::string> out;
  std::optional<std::string> svg;

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a config. Unknown keys, duplicate keys, missing
/// parameters, wrongly typed values and invalid parameter sets all throw
/// ValidationError naming the offending key or constraint.
RunConfig parse_config(std::string_view text);

/// Inverse of parse_config; nu is written directly, K is omitted for Malthus
/// variants that do not carry one.
std::string serialize_config(const RunConfig& cfg);

}  // namespace ecochain
