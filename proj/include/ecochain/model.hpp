#pragma once

// Three-level food chain P -> (S, I) -> V with an SI disease in the
// intermediate population. Everything here is templated on the scalar type
// so the same right-hand side can be evaluated in double, long double or an
// autodiff scalar.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "ecochain/errors.hpp"

namespace ecochain {

enum class Variant {
  MalthusEpidemic,
  LogisticEpidemic,
  LogisticDiseaseFree,
  MalthusDiseaseFree,
};

constexpr bool is_malthus(Variant v) {
  return v == Variant::MalthusEpidemic || v == Variant::MalthusDiseaseFree;
}

constexpr bool is_disease_free(Variant v) {
  return v == Variant::LogisticDiseaseFree || v == Variant::MalthusDiseaseFree;
}

// "malthus", "logistic", "logistic-disease-free", "malthus-disease-free"
std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);

// Slot layout of a population vector. Disease-free variants keep Q = S + I
// in the S slot and pin I to zero.
enum StateIndex : Eigen::Index { kP = 0, kS = 1, kI = 2, kV = 3 };

template <typename Scalar>
using State = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
struct ParameterSet {
  Scalar g{};     // predator conversion on infected
  Scalar f{};     // predator conversion on susceptibles
  Scalar c{};     // predation rate on infected
  Scalar l{};     // susceptible conversion on bottom prey
  Scalar q{};     // predation rate on susceptibles
  Scalar b{};     // hunting rate of S on V
  Scalar beta{};  // disease incidence
  Scalar tau{};   // top predator mortality
  Scalar nu{};    // infected mortality, mu + disease-induced mortality
  Scalar mu{};    // natural intermediate mortality
  Scalar r{};     // bottom prey reproduction
  Scalar K{};     // carrying capacity, ignored by the Malthus variants

  bool operator==(const ParameterSet&) const = default;
};

using Params = ParameterSet<double>;
using Vec4 = State<double>;
using MatrixXd = MatrixX<double>;

/// Sets nu = mu + mu0 from the disease-induced mortality mu0 >= 0.
template <typename Scalar>
ParameterSet<Scalar> with_disease_mortality(ParameterSet<Scalar> p, Scalar mu0) {
  p.nu = p.mu + mu0;
  return p;
}

inline constexpr std::array<std::string_view, 12> kParameterNames = {
    "g", "f", "c", "l", "q", "b", "beta", "tau", "nu", "mu", "r", "K"};

bool is_parameter_name(std::string_view name);

/// Named access used by sweeps and the config reader. Throws ValidationError
/// for names outside kParameterNames.
template <typename Scalar>
Scalar& parameter(ParameterSet<Scalar>& p, std::string_view name) {
  using Member = Scalar ParameterSet<Scalar>::*;
  static constexpr std::array<Member, 12> members = {
      &ParameterSet<Scalar>::g,    &ParameterSet<Scalar>::f,   &ParameterSet<Scalar>::c,
      &ParameterSet<Scalar>::l,    &ParameterSet<Scalar>::q,   &ParameterSet<Scalar>::b,
      &ParameterSet<Scalar>::beta, &ParameterSet<Scalar>::tau, &ParameterSet<Scalar>::nu,
      &ParameterSet<Scalar>::mu,   &ParameterSet<Scalar>::r,   &ParameterSet<Scalar>::K};
  for (std::size_t i = 0; i < kParameterNames.size(); ++i) {
    if (kParameterNames[i] == name) return p.*members[i];
  }
  throw ValidationError("unknown parameter \"" + std::string(name) + "\"");
}

template <typename Scalar>
Scalar parameter(const ParameterSet<Scalar>& p, std::string_view name) {
  auto copy = p;
  return parameter(copy, name);
}

struct ValidationReport {
  std::vector<std::string> violations;  // constraint names, e.g. "g<c", "K>0"
  bool ok() const { return violations.empty(); }
  std::string message() const;
};

ValidationReport validate_params(const Params& p, Variant variant);

/// Throws ValidationError carrying the report message if p is invalid.
void require_valid(const Params& p, Variant variant);

// Right-hand side without any input checks. The integrator and the
// finite-difference oracle evaluate it at slightly negative trial states.
template <typename Scalar>
State<Scalar> evaluate_rhs(Variant variant, const ParameterSet<Scalar>& p,
                           const State<Scalar>& x) {
  const Scalar P = x[kP], S = x[kS], I = x[kI], V = x[kV];
  const Scalar growth = is_malthus(variant) ? p.r : Scalar(p.r * (Scalar(1) - V / p.K));
  State<Scalar> dx;
  if (is_disease_free(variant)) {
    dx[kP] = P * (p.f * S - p.tau);
    dx[kS] = S * (p.l * V - p.q * P - p.mu);
    dx[kI] = Scalar(0);
    dx[kV] = V * (growth - p.b * S);
  } else {
    dx[kP] = P * (p.g * I + p.f * S - p.tau);
    dx[kS] = S * (p.l * V - p.beta * I - p.q * P - p.mu);
    dx[kI] = I * (p.beta * S - p.c * P - p.nu);
    dx[kV] = V * (growth - p.b * S);
  }
  return dx;
}

namespace detail {

template <typename Scalar>
void check_state(Variant variant, const State<Scalar>& x) {
  using std::isfinite;
  static constexpr std::array<const char*, 4> names = {"P", "S", "I", "V"};
  for (Eigen::Index i = 0; i < 4; ++i) {
    if (!isfinite(x[i])) throw ValidationError(std::string("state component ") + names[i] + " is not finite");
    if (x[i] < Scalar(0)) throw ValidationError(std::string("state component ") + names[i] + " is negative");
  }
  if (is_disease_free(variant) && x[kI] != Scalar(0)) {
    throw ValidationError("disease-free variants require I = 0");
  }
}

inline std::array<Eigen::Index, 4> active_indices(Variant variant, Eigen::Index& n) {
  if (is_disease_free(variant)) {
    n = 3;
    return {kP, kS, kV, 0};
  }
  n = 4;
  return {kP, kS, kI, kV};
}

}  // namespace detail

/// dx/dt of the chosen variant. Rejects non-finite or negative states.
template <typename Scalar>
State<Scalar> vector_field(Variant variant, const ParameterSet<Scalar>& p, const State<Scalar>& x) {
  detail::check_state(variant, x);
  return evaluate_rhs(variant, p, x);
}

/// Analytic Jacobian, without input checks. 4x4 for the epidemic variants,
/// 3x3 over (P, Q, V) for the disease-free ones.
template <typename Scalar>
MatrixX<Scalar> evaluate_jacobian(Variant variant, const ParameterSet<Scalar>& p,
                                  const State<Scalar>& x) {
  const Scalar P = x[kP], S = x[kS], I = x[kI], V = x[kV];
  const Scalar zero(0);
  // Last diagonal entry: d/dV of V*growth(V) - bSV.
  const Scalar vv = is_malthus(variant) ? Scalar(p.r - p.b * S)
                                        : Scalar(p.r * (Scalar(1) - V / p.K) - p.b * S - V * p.r / p.K);
  MatrixX<Scalar> J(4, 4);
  J << p.g * I + p.f * S - p.tau, p.f * P, p.g * P, zero,
       -p.q * S, p.l * V - p.mu - p.beta * I - p.q * P, -p.beta * S, p.l * S,
       -I * p.c, p.beta * I, -p.nu + p.beta * S - p.c * P, zero,
       zero, -V * p.b, zero, vv;
  if (!is_disease_free(variant)) return J;

  // Disease-free: the same matrix at I = 0 with the I row and column removed.
  MatrixX<Scalar> R(3, 3);
  const std::array<Eigen::Index, 3> keep = {kP, kS, kV};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) R(i, j) = J(keep[i], keep[j]);
  }
  R(0, 0) = p.f * S - p.tau;
  R(1, 1) = p.l * V - p.mu - p.q * P;
  return R;
}

template <typename Scalar>
MatrixX<Scalar> jacobian(Variant variant, const ParameterSet<Scalar>& p, const State<Scalar>& x) {
  detail::check_state(variant, x);
  return evaluate_jacobian(variant, p, x);
}

/// Central-difference Jacobian; coordinate j is perturbed by
/// h * max(1, |x_j|). Evaluates the unchecked right-hand side, so states on a
/// face are fine.
template <typename Scalar>
MatrixX<Scalar> jacobian_fd(Variant variant, const ParameterSet<Scalar>& p, const State<Scalar>& x,
                            Scalar h) {
  using std::isfinite;
  if (!(h > Scalar(0)) || !isfinite(h)) throw ValidationError("finite-difference step must be positive");
  Eigen::Index n = 0;
  const auto idx = detail::active_indices(variant, n);
  MatrixX<Scalar> J(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    using std::abs;
    using std::max;
    const Scalar step = h * max(Scalar(1), Scalar(abs(x[idx[j]])));
    State<Scalar> xp = x, xm = x;
    xp[idx[j]] += step;
    xm[idx[j]] -= step;
    const Scalar span = xp[idx[j]] - xm[idx[j]];
    if (!(span > Scalar(0))) throw NumericalError("finite-difference step underflows at this state");
    const State<Scalar> d = (evaluate_rhs(variant, p, xp) - evaluate_rhs(variant, p, xm)) / span;
    for (Eigen::Index i = 0; i < n; ++i) J(i, j) = d[idx[i]];
  }
  return J;
}

/// W = P + S + I + V.
template <typename Scalar>
Scalar total_population(const State<Scalar>& x) {
  return x.sum();
}

}  // namespace ecochain
