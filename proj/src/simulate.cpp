#include "ecochain/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ecochain {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// Fifth-order weights minus embedded fourth-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants (Hairer, Norsett & Wanner).
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kSafety = 0.9;
constexpr double kMinShrink = 0.2;  // h_new >= 0.2 h
constexpr double kMaxGrow = 10.0;   // h_new <= 10 h
constexpr double kMinStep = 1e-14;

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ValidationError("integrator needs rtol>0 and atol>0");
  if (!(h0 > 0.0) || !(h0 <= hmax)) throw ValidationError("integrator needs 0<h0<=hmax");
  if (!(tmax > 0.0) || !std::isfinite(tmax)) throw ValidationError("integrator needs tmax>0");
}

Trajectory integrate_rhs(const Rhs& rhs, const Vec4& x0, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!x0.allFinite()) throw ValidationError("initial state is not finite");

  Trajectory traj;
  double t = 0.0;
  Vec4 y = x0;
  Vec4 k1 = rhs(y);
  traj.times.push_back(t);
  traj.states.push_back(y);
  traj.derivatives.push_back(k1);

  double h = std::min(cfg.h0, cfg.tmax);
  double err_old = 1e-4;
  bool last_rejected = false;

  while (t < cfg.tmax) {
    if (traj.stats.accepted + traj.stats.rejected + traj.stats.negativity_rejections >= cfg.max_steps) {
      traj.completed = false;
      traj.termination_reason = "step budget exhausted at t=" + std::to_string(t);
      break;
    }
    if (h < kMinStep) {
      traj.completed = false;
      traj.termination_reason = "step size underflow at t=" + std::to_string(t);
      break;
    }
    bool final_step = false;
    if (t + h >= cfg.tmax) {
      h = cfg.tmax - t;
      final_step = true;
    }

    const Vec4 k2 = rhs(y + h * a21 * k1);
    const Vec4 k3 = rhs(y + h * (a31 * k1 + a32 * k2));
    const Vec4 k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec4 k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec4 k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Vec4 y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    Vec4 k7 = rhs(y_new);
    const Vec4 err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double scale =
        cfg.atol + cfg.rtol * std::max(y.cwiseAbs().maxCoeff(), y_new.cwiseAbs().maxCoeff());
    double err = err_vec.cwiseAbs().maxCoeff() / scale;
    if (!std::isfinite(err)) err = 1e10;

    if (err > 1.0) {
      ++traj.stats.rejected;
      const double shrink = std::min(1.0 / kMinShrink, std::pow(err, kExpo) / kSafety);
      h /= shrink;
      last_rejected = true;
      continue;
    }

    if (cfg.enforce_nonnegativity) {
      if ((y_new.array() < -cfg.atol).any()) {
        ++traj.stats.negativity_rejections;
        h *= 0.5;
        last_rejected = true;
        continue;
      }
      if ((y_new.array() < 0.0).any()) {
        y_new = y_new.cwiseMax(0.0);
        k7 = rhs(y_new);
      }
    }

    ++traj.stats.accepted;
    t = final_step ? cfg.tmax : t + h;
    y = y_new;
    k1 = k7;
    traj.times.push_back(t);
    traj.states.push_back(y);
    traj.derivatives.push_back(k1);

    double factor = std::pow(err, kExpo) / std::pow(err_old, kBeta) / kSafety;
    factor = std::clamp(factor, 1.0 / kMaxGrow, 1.0 / kMinShrink);
    double h_new = h / factor;
    if (last_rejected) h_new = std::min(h_new, h);
    h = std::min(h_new, cfg.hmax);
    err_old = std::max(err, 1e-4);
    last_rejected = false;
  }
  return traj;
}

Trajectory integrate(Variant variant, const Params& p, const Vec4& x0, const IntegratorConfig& cfg) {
  require_valid(p, variant);
  detail::check_state(variant, x0);
  auto traj = integrate_rhs([&](const Vec4& x) { return evaluate_rhs(variant, p, x); }, x0, cfg);
  traj.variant = variant;
  traj.params = p;
  return traj;
}

std::vector<Vec4> sample(const Trajectory& traj, const std::vector<double>& times) {
  if (traj.times.empty()) throw ValidationError("cannot sample an empty trajectory");
  std::vector<Vec4> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < traj.times.front() || t > traj.times.back()) {
      throw ValidationError("sample time " + std::to_string(t) + " outside the trajectory");
    }
    auto hi = std::lower_bound(traj.times.begin(), traj.times.end(), t);
    auto k = static_cast<std::size_t>(hi - traj.times.begin());
    if (traj.times[k] == t) {
      out.push_back(traj.states[k]);
      continue;
    }
    const std::size_t j = k - 1;
    const double h = traj.times[k] - traj.times[j];
    const double s = (t - traj.times[j]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    out.push_back(h00 * traj.states[j] + h10 * h * traj.derivatives[j] + h01 * traj.states[k] +
                  h11 * h * traj.derivatives[k]);
  }
  return out;
}

BoundednessReport boundedness_monitor(const Trajectory& traj, const Params& p) {
  if (is_malthus(traj.variant)) {
    throw ValidationError("boundedness theorem requires finite K (logistic variant)");
  }
  if (traj.states.empty()) throw ValidationError("empty trajectory");
  BoundednessReport report{};
  report.theta = std::min({p.tau, p.mu, p.nu});
  report.psi_star = (p.r + report.theta) * (p.r + report.theta) * p.K / (4.0 * p.r);
  report.bound = std::max(total_population(traj.states.front()), report.psi_star / report.theta);
  report.holds = true;
  const double limit = report.bound + 1e-9 * report.bound;
  report.max_total = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double w = total_population(traj.states[i]);
    report.max_total = std::max(report.max_total, w);
    if (w > limit && report.holds) {
      report.holds = false;
      report.first_violation = i;
    }
  }
  return report;
}

double lv_first_integral(const Params& p, double S, double V) {
  if (!(S > 0.0) || !(V > 0.0)) throw ValidationError("first integral needs S>0 and V>0");
  return p.b * S - p.r * std::log(S) + p.l * V - p.mu * std::log(V);
}

std::string_view long_term_name(LongTermClass::Kind k) {
  switch (k) {
    case LongTermClass::Kind::ConvergedTo: return "converged";
    case LongTermClass::Kind::Oscillatory: return "oscillatory";
    case LongTermClass::Kind::Undetermined: return "undetermined";
  }
  return "?";
}

LongTermClass detect_longterm(const Trajectory& traj, const std::vector<Equilibrium>& equilibria, double tol) {
  if (traj.states.empty()) throw ValidationError("empty trajectory");
  LongTermClass out;
  const double t_end = traj.times.back();
  const double t_start = t_end - kTailFraction * (t_end - traj.times.front());

  out.tail_min = Vec4::Constant(std::numeric_limits<double>::infinity());
  out.tail_max = Vec4::Constant(-std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.times[i] < t_start) continue;
    out.tail_min = out.tail_min.cwiseMin(traj.states[i]);
    out.tail_max = out.tail_max.cwiseMax(traj.states[i]);
  }
  out.final_state = traj.states.back();

  static constexpr std::array<const char*, 4> names = {"P", "S", "I", "V"};
  for (int i = 0; i < 4; ++i) {
    if (out.tail_max[i] < kExtinctionLevel) out.extinct.emplace_back(names[static_cast<std::size_t>(i)]);
  }

  const Vec4 swing = out.peak_to_trough();
  if ((swing.array() < tol).all()) {
    out.kind = LongTermClass::Kind::ConvergedTo;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& eq : equilibria) {
      if (!eq.feasible) continue;
      const double d = (eq.state - out.final_state).cwiseAbs().maxCoeff();
      if (d <= 10.0 * tol && d < best) {
        best = d;
        out.matched = eq.label;
      }
    }
  } else if ((swing.array() > 10.0 * tol).any()) {
    out.kind = LongTermClass::Kind::Oscillatory;
  }
  return out;
}

}  // namespace ecochain
