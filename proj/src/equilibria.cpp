#include "ecochain/equilibria.hpp"

#include <cmath>
#include <limits>

namespace ecochain {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Equilibrium make(Variant variant, const Params& p, EquilibriumLabel label, const Vec4& x,
                 Provenance provenance = Provenance::ClosedForm) {
  Equilibrium eq;
  eq.label = label;
  eq.state = x;
  eq.provenance = provenance;
  eq.feasible = is_nonnegative(x);
  eq.residual = residual(variant, p, x);
  return eq;
}

Equilibrium absent(EquilibriumLabel label, std::string note) {
  Equilibrium eq;
  eq.label = label;
  eq.state = Vec4::Constant(kNaN);
  eq.provenance = Provenance::Absent;
  eq.feasible = false;
  eq.residual = kNaN;
  eq.note = std::move(note);
  return eq;
}

}  // namespace

std::string_view label_name(EquilibriumLabel label) {
  switch (label) {
    case EquilibriumLabel::D1: return "D1";
    case EquilibriumLabel::Dhat: return "Dhat";
    case EquilibriumLabel::Dstar: return "Dstar";
    case EquilibriumLabel::E0t: return "E0t";
    case EquilibriumLabel::E1t: return "E1t";
    case EquilibriumLabel::Estar_t: return "Estar_t";
    case EquilibriumLabel::E0: return "E0";
    case EquilibriumLabel::E1: return "E1";
    case EquilibriumLabel::E2: return "E2";
    case EquilibriumLabel::E3: return "E3";
    case EquilibriumLabel::E4: return "E4";
    case EquilibriumLabel::Estar: return "Estar";
  }
  return "?";
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::LinearSolve: return "linear-solve";
    case Provenance::Absent: return "absent";
  }
  return "?";
}

double residual(Variant variant, const Params& p, const Vec4& x) {
  return evaluate_rhs(variant, p, x).cwiseAbs().maxCoeff();
}

ThresholdPair thresholds(const Params& p) {
  const double rho1 = p.l * p.K / p.mu;
  const double rho2 = (p.f * p.r / (p.b * p.tau)) * (1.0 - p.mu / (p.l * p.K));
  return {rho1, rho2};
}

std::vector<Equilibrium> disease_free_equilibria(const Params& p) {
  constexpr auto v = Variant::LogisticDiseaseFree;
  const auto rho = thresholds(p);

  auto d1 = make(v, p, EquilibriumLabel::D1, Vec4(0.0, 0.0, 0.0, p.K));

  const double q_hat = (p.r / p.b) * (1.0 - p.mu / (p.l * p.K));
  auto d_hat = make(v, p, EquilibriumLabel::Dhat, Vec4(0.0, q_hat, 0.0, p.mu / p.l));
  d_hat.feasible = rho.rho1 >= 1.0;

  const double shortfall = 1.0 - p.b * p.tau / (p.r * p.f);
  const double p_star = (p.l * p.K * shortfall - p.mu) / p.q;
  auto d_star = make(v, p, EquilibriumLabel::Dstar, Vec4(p_star, p.tau / p.f, 0.0, p.K * shortfall));
  d_star.feasible = rho.rho2 >= 1.0;

  return {d1, d_hat, d_star};
}

std::vector<Equilibrium> malthus_disease_free_equilibria(const Params& p) {
  constexpr auto v = Variant::MalthusDiseaseFree;
  auto d_hat = make(v, p, EquilibriumLabel::Dhat, Vec4(0.0, p.r / p.b, 0.0, p.mu / p.l));
  return {absent(EquilibriumLabel::D1, "absent in Malthus variant (V grows without bound)"), d_hat,
          absent(EquilibriumLabel::Dstar, "absent in Malthus variant (requires fr = b tau)")};
}

MalthusCoexistenceConditions malthus_coexistence_conditions(const Params& p) {
  MalthusCoexistenceConditions out{};
  out.predator_positive = p.r * p.beta / (p.b * p.nu) >= 1.0;
  out.infected_positive = p.r * p.f / (p.b * p.tau) <= 1.0;
  const double det = p.f * p.c - p.g * p.q;
  if (det != 0.0) {
    const double ratio =
        p.b * (p.tau * p.beta * p.c + p.g * (p.mu * p.c - p.q * p.nu)) / (p.r * p.beta * det);
    out.third = ratio <= 1.0;
  }
  return out;
}

std::vector<Equilibrium> malthus_equilibria(const Params& p) {
  constexpr auto v = Variant::MalthusEpidemic;
  std::vector<Equilibrium> out;
  out.push_back(make(v, p, EquilibriumLabel::E0t, Vec4::Zero()));
  out.push_back(make(v, p, EquilibriumLabel::E1t, Vec4(0.0, p.r / p.b, 0.0, p.mu / p.l)));

  const auto [g, f, c, l, q, b, beta, tau, nu, mu, r, K] = p;
  (void)K;
  const Vec4 coexist((beta * r - nu * b) / (b * c), r / b, (b * tau - r * f) / (g * b),
                     (beta * r * g * q - beta * r * f * c + b * g * mu * c - b * g * q * nu +
                      b * tau * beta * c) /
                         (g * b * c * l));
  auto e_star = make(v, p, EquilibriumLabel::Estar_t, coexist);
  if (!malthus_coexistence_conditions(p).third) {
    e_star.note = "fc = gq: third printed coexistence condition is undefined";
  }
  out.push_back(std::move(e_star));
  out.push_back(absent(EquilibriumLabel::E2, "absent in Malthus variant (V grows without bound)"));
  return out;
}

std::vector<Equilibrium> logistic_boundary_equilibria(const Params& p) {
  constexpr auto v = Variant::LogisticEpidemic;
  const auto [g, f, c, l, q, b, beta, tau, nu, mu, r, K] = p;
  (void)g;
  (void)c;
  std::vector<Equilibrium> out;
  out.push_back(make(v, p, EquilibriumLabel::E0, Vec4::Zero()));

  auto e1 = make(v, p, EquilibriumLabel::E1, Vec4(0.0, (r / b) * (1.0 - mu / (l * K)), 0.0, mu / l));
  e1.feasible = thresholds(p).rho1 >= 1.0;
  out.push_back(std::move(e1));

  out.push_back(make(v, p, EquilibriumLabel::E2, Vec4(0.0, 0.0, 0.0, K)));

  const Vec4 e3(0.0, nu / beta, (l * K * r * beta - l * K * b * nu - mu * r * beta) / (r * beta * beta),
                K * (r * beta - b * nu) / (r * beta));
  out.push_back(make(v, p, EquilibriumLabel::E3, e3));

  const Vec4 e4((r * f * l * K - r * f * mu - tau * l * K * b) / (r * f * q), tau / f, 0.0,
                K * (r * f - b * tau) / (r * f));
  out.push_back(make(v, p, EquilibriumLabel::E4, e4));
  return out;
}

bool e3_printed_condition(const Params& p) {
  return p.r * p.beta * (p.l * p.K - p.mu) > p.b * p.K * p.l * p.nu;
}

bool e4_printed_condition(const Params& p) {
  return p.r * p.f * (p.l * p.K - p.mu) > p.b * p.K * p.l * p.tau;
}

CoexistenceResult logistic_coexistence(const Params& p) {
  // Unknowns ordered (P, S, I, V):
  //   g I + f S           = tau
  //  -q P - beta I + l V  = mu
  //  -c P + beta S        = nu
  //   b S + (r/K) V       = r
  Eigen::Matrix4d A;
  A << 0.0, p.f, p.g, 0.0,
      -p.q, 0.0, -p.beta, p.l,
      -p.c, p.beta, 0.0, 0.0,
      0.0, p.b, 0.0, p.r / p.K;
  const Eigen::Vector4d rhs(p.tau, p.mu, p.nu, p.r);

  CoexistenceResult result;
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(A);
  const double rcond = lu.rcond();
  result.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!std::isfinite(result.condition) || result.condition > kDegenerateCondition) {
    result.reason = "degenerate: interaction matrix is singular to working precision";
    return result;
  }
  const Vec4 x = lu.solve(rhs);
  result.equilibrium = make(Variant::LogisticEpidemic, p, EquilibriumLabel::Estar, x, Provenance::LinearSolve);
  return result;
}

PreyFreeReport prey_free_infeasibility(const Params& p) {
  const auto [g, f, c, l, q, b, beta, tau, nu, mu, r, K] = p;
  (void)l;
  (void)b;
  (void)r;
  (void)K;
  const double det = f * c - g * q;
  if (det == 0.0) throw NumericalError("degenerate denominator: fc = gq");

  PreyFreeReport report;
  report.point = Vec4(-(nu * f - g * mu - tau * beta) / det,
                      (g * mu * c - g * q * nu + tau * beta * c) / (beta * det),
                      -(mu * c * f - q * nu * f + q * tau * beta) / (beta * det), 0.0);
  static constexpr std::array<const char*, 3> names = {"P", "S", "I"};
  for (int i = 0; i < 3; ++i) {
    if (report.point[i] < 0.0) report.negative_components.emplace_back(names[i]);
  }
  report.infeasible = !report.negative_components.empty();
  return report;
}

double predator_free_gap(const Params& p) { return p.nu / p.beta - p.r / p.b; }

std::vector<Equilibrium> equilibria(Variant variant, const Params& p) {
  switch (variant) {
    case Variant::LogisticDiseaseFree: return disease_free_equilibria(p);
    case Variant::MalthusDiseaseFree: return malthus_disease_free_equilibria(p);
    case Variant::MalthusEpidemic: return malthus_equilibria(p);
    case Variant::LogisticEpidemic: {
      auto out = logistic_boundary_equilibria(p);
      auto coexist = logistic_coexistence(p);
      if (coexist.equilibrium) {
        out.push_back(std::move(*coexist.equilibrium));
      } else {
        auto rec = absent(EquilibriumLabel::Estar, coexist.reason);
        out.push_back(std::move(rec));
      }
      return out;
    }
  }
  return {};
}

}  // namespace ecochain
