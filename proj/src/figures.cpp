#include "ecochain/figures.hpp"

#include <algorithm>
#include <cmath>

#include "ecochain/csv.hpp"
#include "ecochain/equilibria.hpp"
#include "ecochain/stability.hpp"

namespace ecochain {

namespace {

Params logistic_base() {
  Params p;
  p.g = 0.3;
  p.f = 0.2;
  p.c = 0.4;
  p.l = 0.6;
  p.q = 0.7;
  p.b = 0.9;
  p.beta = 0.3;
  p.tau = 0.2;
  p.nu = 0.2;
  p.mu = 0.2;
  p.r = 1.3;
  p.K = 1.0;
  return p;
}

std::string vec_text(const Vec4& x) {
  return "(" + format_number(x[0]) + ", " + format_number(x[1]) + ", " + format_number(x[2]) + ", " +
         format_number(x[3]) + ")";
}

double max_diff(const Vec4& a, const Vec4& b) { return (a - b).cwiseAbs().maxCoeff(); }

FigureCheck near(std::string name, const Vec4& got, const Vec4& want, double tol) {
  const double d = max_diff(got, want);
  return {std::move(name), d <= tol,
          vec_text(got) + " vs " + vec_text(want) + ", max deviation " + format_number(d)};
}

const Equilibrium& find(const std::vector<Equilibrium>& eqs, EquilibriumLabel label) {
  for (const auto& e : eqs) {
    if (e.label == label) return e;
  }
  throw std::logic_error("equilibrium missing");
}

void check_longterm(FigureReport& report, const LongTermClass& lt, EquilibriumLabel expected) {
  const bool ok = lt.kind == LongTermClass::Kind::ConvergedTo && lt.matched == expected;
  report.checks.push_back({"long-term behaviour is convergence to " + std::string(label_name(expected)), ok,
                           std::string(long_term_name(lt.kind)) +
                               (lt.matched ? " (" + std::string(label_name(*lt.matched)) + ")" : "")});
}

}  // namespace

Figure parse_figure(std::string_view name) {
  for (auto f : {Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig4}) {
    if (figure_name(f) == name) return f;
  }
  throw ValidationError("unknown figure \"" + std::string(name) + "\" (expected fig1..fig4)");
}

std::string_view figure_name(Figure fig) {
  switch (fig) {
    case Figure::Fig1: return "fig1";
    case Figure::Fig2: return "fig2";
    case Figure::Fig3: return "fig3";
    case Figure::Fig4: return "fig4";
  }
  return "?";
}

Params figure_params(Figure fig) {
  Params p = logistic_base();
  switch (fig) {
    case Figure::Fig1:
      p.g = 0.3;
      p.f = 0.2;
      p.c = 0.4;
      p.l = 0.2;
      p.q = 0.3;
      p.b = 0.4;
      p.beta = 0.3;
      p.tau = 0.4;
      p.nu = 0.3;
      p.mu = 0.2;
      p.r = 0.5;
      p.K = 0.0;
      break;
    case Figure::Fig2: p.beta = 0.1; break;
    case Figure::Fig3: p.f = 0.1; break;
    case Figure::Fig4: break;
  }
  return p;
}

Variant figure_variant(Figure fig) {
  return fig == Figure::Fig1 ? Variant::MalthusEpidemic : Variant::LogisticEpidemic;
}

Vec4 figure_initial_state(Figure fig) {
  // Initial conditions are not published; these are fixed documented choices.
  return fig == Figure::Fig1 ? Vec4(0.1, 1.0, 0.3, 2.0) : Vec4(0.1, 0.5, 0.2, 0.5);
}

IntegratorConfig figure_integrator(Figure fig) {
  IntegratorConfig cfg;
  switch (fig) {
    case Figure::Fig1: cfg.tmax = 1000.0; break;
    // The predator dies out at rate tau - f S1 = 0.0074, hence the long run.
    case Figure::Fig2: cfg.tmax = 2000.0; break;
    case Figure::Fig3: cfg.tmax = 1000.0; break;
    case Figure::Fig4: cfg.tmax = 500.0; break;
  }
  return cfg;
}

bool FigureReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const FigureCheck& c) { return c.pass; });
}

FigureReport reproduce(Figure fig) {
  FigureReport report;
  report.figure = fig;
  const Params p = figure_params(fig);
  const Variant variant = figure_variant(fig);
  report.trajectory = integrate(variant, p, figure_initial_state(fig), figure_integrator(fig));
  const auto& traj = report.trajectory;
  report.checks.push_back({"integration completed", traj.completed, traj.termination_reason});
  const auto eqs = equilibria(variant, p);
  const auto lt = detect_longterm(traj, eqs, kLongTermTolerance);

  switch (fig) {
    case Figure::Fig1: {
      report.checks.push_back({"no convergence (persistent oscillation)",
                               lt.kind == LongTermClass::Kind::Oscillatory, std::string(long_term_name(lt.kind))});
      const double swing = lt.peak_to_trough()[kP];
      report.checks.push_back({"tail peak-to-trough of P > 0.05", swing > kFig1MinSwing, format_number(swing)});
      const auto cert = malthus_coexistence_certificate(p);
      const double a1 = cert.stability.char_poly[1];
      report.checks.push_back({"|a1| < 1e-12 at the coexistence point", std::abs(a1) < 1e-12, format_number(a1)});
      report.checks.push_back({"Routh-Hurwitz fails at a1>0",
                               cert.routh_hurwitz.outcome != RouthHurwitzOutcome::Pass &&
                                   cert.routh_hurwitz.condition == "a1>0",
                               std::string(outcome_name(cert.routh_hurwitz.outcome)) + " at " +
                                   cert.routh_hurwitz.condition});
      break;
    }
    case Figure::Fig2: {
      report.notes.emplace_back(kFig2Note);
      report.checks.push_back({"E3 infeasible", !find(eqs, EquilibriumLabel::E3).feasible,
                               vec_text(find(eqs, EquilibriumLabel::E3).state)});
      report.checks.push_back({"E4 infeasible", !find(eqs, EquilibriumLabel::E4).feasible,
                               vec_text(find(eqs, EquilibriumLabel::E4).state)});
      report.checks.push_back(
          near("integration settles on (0, 0.96296, 0, 0.33333)", traj.states.back(), kFig2Attractor, kFigureTolerance));
      check_longterm(report, lt, EquilibriumLabel::E1);
      break;
    }
    case Figure::Fig3: {
      const auto& e3 = find(eqs, EquilibriumLabel::E3);
      const Vec4 caption(0.0, 0.6667, 0.4103, 0.5385);
      report.checks.push_back(near("E3 closed form matches caption", e3.state, caption, kFigureTolerance));
      const auto cls = classify(variant, p, e3);
      report.checks.push_back({"E3 classified stable", cls.kind == StabilityKind::Stable,
                               std::string(kind_name(cls.kind))});
      report.checks.push_back(near("integration attains E3", traj.states.back(), caption, kFigureTolerance));
      check_longterm(report, lt, EquilibriumLabel::E3);
      break;
    }
    case Figure::Fig4: {
      const Vec4 caption(0.0571, 0.7429, 0.1714, 0.4857);
      const auto coexist = logistic_coexistence(p);
      if (!coexist.equilibrium) {
        report.checks.push_back({"coexistence solve", false, coexist.reason});
        break;
      }
      report.checks.push_back(near("coexistence solve matches caption", coexist.equilibrium->state, caption,
                                   kFigureTolerance));
      const auto cls = classify(variant, p, *coexist.equilibrium);
      report.checks.push_back({"E* classified stable", cls.kind == StabilityKind::Stable,
                               std::string(kind_name(cls.kind))});
      report.checks.push_back(near("integration attains E*", traj.states.back(), caption, kFigureTolerance));
      check_longterm(report, lt, EquilibriumLabel::Estar);
      break;
    }
  }
  return report;
}

}  // namespace ecochain
