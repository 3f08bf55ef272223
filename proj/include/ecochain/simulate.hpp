#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ecochain/equilibria.hpp"
#include "ecochain/model.hpp"

namespace ecochain {

struct IntegratorConfig {
  double rtol = 1e-8;
  double atol = 1e-10;
  double h0 = 1e-3;
  double hmax = 1.0;
  double tmax = 100.0;
  // Reject a step (and halve h) when a component drops below -atol; snap
  // components in [-atol, 0) to zero.
  bool enforce_nonnegativity = true;
  std::size_t max_steps = 20'000'000;

  void validate() const;  // throws ValidationError
  bool operator==(const IntegratorConfig&) const = default;
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;            // error-control rejections
  std::size_t negativity_rejections = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec4> states;
  std::vector<Vec4> derivatives;  // right-hand side at each stored state
  StepStats stats;
  Variant variant = Variant::LogisticEpidemic;
  Params params;
  bool completed = true;
  std::string termination_reason;  // set when completed is false

  std::size_t size() const { return times.size(); }
};

using Rhs = std::function<Vec4(const Vec4&)>;

/// Dormand-Prince 5(4) with PI step-size control on an arbitrary autonomous
/// right-hand side. Local error is measured as
///   max_i |err_i| / (atol + rtol * max(|x_n|_inf, |x_n+1|_inf)).
Trajectory integrate_rhs(const Rhs& rhs, const Vec4& x0, const IntegratorConfig& cfg);

/// Integrates a model variant from x0 on [0, cfg.tmax]. Step underflow ends
/// the run early with completed = false.
Trajectory integrate(Variant variant, const Params& p, const Vec4& x0, const IntegratorConfig& cfg);

/// Cubic Hermite interpolation of the stored steps at the requested times.
std::vector<Vec4> sample(const Trajectory& traj, const std::vector<double>& times);

struct BoundednessReport {
  double theta;     // min(tau, mu, nu)
  double psi_star;  // (r + theta)^2 K / (4 r)
  double bound;     // max(W(0), psi_star / theta)
  double max_total;
  bool holds;
  std::optional<std::size_t> first_violation;
};

/// Checks W(t) <= bound (1 + 1e-9) at every stored state. Malthus variants
/// throw ValidationError.
BoundednessReport boundedness_monitor(const Trajectory& traj, const Params& p);

/// b S - r ln S + l V - mu ln V, conserved on the P = I = 0 face of the
/// Malthus model. Throws ValidationError unless S, V > 0.
double lv_first_integral(const Params& p, double S, double V);

struct LongTermClass {
  enum class Kind { ConvergedTo, Oscillatory, Undetermined };
  Kind kind = Kind::Undetermined;
  Vec4 final_state = Vec4::Zero();
  std::optional<EquilibriumLabel> matched;
  Vec4 tail_min = Vec4::Zero();
  Vec4 tail_max = Vec4::Zero();
  std::vector<std::string> extinct;  // tail maximum below kExtinctionLevel

  Vec4 peak_to_trough() const { return tail_max - tail_min; }
};

inline constexpr double kExtinctionLevel = 1e-6;
inline constexpr double kTailFraction = 0.2;

std::string_view long_term_name(LongTermClass::Kind k);

/// Looks at the last 20% of the run. ConvergedTo when every component varies
/// by less than tol there (matched to the nearest feasible equilibrium within
/// 10 tol), Oscillatory when some component swings by more than 10 tol.
LongTermClass detect_longterm(const Trajectory& traj, const std::vector<Equilibrium>& equilibria, double tol);

}  // namespace ecochain
