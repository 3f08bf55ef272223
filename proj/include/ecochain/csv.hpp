#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ecochain/simulate.hpp"
#include "ecochain/stability.hpp"

namespace ecochain {

/// 12 significant digits, shortest form ("%.12g").
std::string format_number(double value);

/// Header "t,P,S,I,V", one row per stored state, '\n' line ends.
std::string emit_csv(const Trajectory& traj);

/// Header "param,rho1,rho2,<eq>_feasible,<eq>_class,...,crossing". Grid rows
/// and refined crossing rows are merged in parameter order; crossing rows
/// name the threshold in the last column, grid rows say "none".
std::string emit_csv(const BranchTable& table);

struct TrajectoryTable {
  std::vector<double> times;
  std::vector<Vec4> states;
};

/// Reads back the output of emit_csv(Trajectory).
TrajectoryTable parse_trajectory_csv(std::string_view text);

}  // namespace ecochain
