#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecochain/model.hpp"

namespace ecochain {

// D*: disease-free model; *_t: Malthus epidemic model; E*: logistic epidemic model.
enum class EquilibriumLabel { D1, Dhat, Dstar, E0t, E1t, Estar_t, E0, E1, E2, E3, E4, Estar };

std::string_view label_name(EquilibriumLabel label);

enum class Provenance { ClosedForm, LinearSolve, Absent };

std::string_view provenance_name(Provenance p);

struct Equilibrium {
  EquilibriumLabel label{};
  Vec4 state = Vec4::Zero();  // disease-free: Q in the S slot, I = 0
  bool feasible = false;
  Provenance provenance = Provenance::ClosedForm;
  double residual = 0.0;  // max-norm of the vector field at state
  std::string note;
};

struct ThresholdPair {
  double rho1;  // lK / mu
  double rho2;  // (fr / (b tau)) (1 - mu / (lK))
};

ThresholdPair thresholds(const Params& p);

/// D1 = (0, 0, K), Dhat and D* of the logistic disease-free model.
std::vector<Equilibrium> disease_free_equilibria(const Params& p);

/// K -> infinity limit: D1 and D* are reported as absent records.
std::vector<Equilibrium> malthus_disease_free_equilibria(const Params& p);

/// The three printed coexistence conditions of the Malthus model. The third
/// one divides by fc - gq and is empty when that vanishes.
struct MalthusCoexistenceConditions {
  bool predator_positive;   // r beta / (b nu) >= 1
  bool infected_positive;   // r f / (b tau) <= 1
  std::optional<bool> third;
};

MalthusCoexistenceConditions malthus_coexistence_conditions(const Params& p);

/// E0t, E1t, Estar_t and an absent record for the bottom-prey-only point.
std::vector<Equilibrium> malthus_equilibria(const Params& p);

/// E0, E1, E2, E3, E4 of the logistic epidemic model.
std::vector<Equilibrium> logistic_boundary_equilibria(const Params& p);

/// Printed feasibility inequalities for E3 / E4, with "KL" read as lK:
/// r beta (lK - mu) > b K l nu and r f (lK - mu) > b K l tau.
bool e3_printed_condition(const Params& p);
bool e4_printed_condition(const Params& p);

struct CoexistenceResult {
  std::optional<Equilibrium> equilibrium;
  std::string reason;        // set when the interaction matrix is degenerate
  double condition = 0.0;    // estimated 1-norm condition number
};

/// Interior equilibrium of the logistic epidemic model. Zeroing the bracketed
/// factors gives a linear system in (P, S, I, V), solved with partial pivoting.
CoexistenceResult logistic_coexistence(const Params& p);

inline constexpr double kDegenerateCondition = 1e12;

struct PreyFreeReport {
  Vec4 point;  // the V = 0 candidate
  bool infeasible;
  std::vector<std::string> negative_components;
};

/// Evaluates the bottom-prey-free candidate point of the Malthus model and
/// certifies it has a negative component. Throws NumericalError if fc = gq.
PreyFreeReport prey_free_infeasibility(const Params& p);

/// nu / beta - r / b. Zero flags the non-generic top-predator-free Malthus
/// equilibrium.
double predator_free_gap(const Params& p);

/// Every equilibrium of a variant, in the order of the functions above
/// (logistic epidemic: E0..E4 then E* when the solve is not degenerate).
std::vector<Equilibrium> equilibria(Variant variant, const Params& p);

/// Max-norm of the vector field at x, evaluated without sign checks.
double residual(Variant variant, const Params& p, const Vec4& x);

inline bool is_nonnegative(const Vec4& x) { return x.allFinite() && (x.array() >= 0.0).all(); }

}  // namespace ecochain
