#pragma once

#include <string>
#include <vector>

#include "ecochain/simulate.hpp"

namespace ecochain {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Standalone SVG line plot: one polyline per series, axis ticks and a
/// legend. Output depends only on the input. Throws ValidationError for an
/// empty series list or any series with fewer than two points.
std::string emit_svg(const std::vector<Series>& series, const std::string& title = "");

/// Populations P, S, I, V against time.
std::string emit_svg(const Trajectory& traj, const std::string& title = "");

}  // namespace ecochain
