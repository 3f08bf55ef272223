#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecochain/equilibria.hpp"
#include "ecochain/model.hpp"

namespace ecochain {

using Complex = std::complex<double>;

/// Eigenvalues of a small real square matrix, sorted by decreasing real part
/// (ties by decreasing imaginary part). Complex values come in exact
/// conjugate pairs.
std::vector<Complex> eigenvalues(const MatrixXd& M);

/// Monic characteristic polynomial det(lambda I - M) = lambda^n + a1 lambda^(n-1) + ... + an.
struct CharPoly {
  std::vector<double> coeffs;  // a0 = 1, a1, ..., an
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator[](int k) const { return coeffs[static_cast<std::size_t>(k)]; }
};

/// Computed by the Faddeev-LeVerrier recursion, independently of the
/// eigensolver.
CharPoly char_poly(const MatrixXd& M);

/// Coefficients of prod (lambda - lambda_i), real parts only.
CharPoly poly_from_roots(const std::vector<Complex>& roots);

enum class RouthHurwitzOutcome { Pass, Fail, Marginal };

std::string_view outcome_name(RouthHurwitzOutcome o);

struct RouthHurwitzVerdict {
  RouthHurwitzOutcome outcome = RouthHurwitzOutcome::Pass;
  std::string condition;  // first condition that did not clearly hold
  std::vector<std::pair<std::string, double>> quantities;  // tested left side minus right side
};

inline constexpr double kRouthHurwitzTol = 1e-12;

/// Degree 3: a1 > 0, a3 > 0, a1 a2 > a3.
/// Degree 4: a1 > 0, a3 > 0, a4 > 0, a1 a2 a3 > a3^2 + a1^2 a4.
/// Conditions are tested in that order; the first one within tol of zero
/// gives Marginal, the first clearly negative one gives Fail.
RouthHurwitzVerdict routh_hurwitz(const CharPoly& cp, double tol = kRouthHurwitzTol);

enum class StabilityKind { Stable, Unstable, Nonhyperbolic };

std::string_view kind_name(StabilityKind k);

struct StabilityClass {
  StabilityKind kind = StabilityKind::Stable;
  std::vector<Complex> eigenvalues;
  double tol = 0.0;
  bool nonhyperbolic = false;  // some |Re| <= tol, reported even when kind is Unstable
  CharPoly char_poly;
  RouthHurwitzVerdict routh_hurwitz;
};

/// 1e-9 * (1 + spectral radius).
double hyperbolicity_tol(const std::vector<Complex>& eigs);

/// Unstable if some Re > tol, else Nonhyperbolic if some |Re| <= tol, else Stable.
StabilityClass classify_matrix(const MatrixXd& J, std::optional<double> tol = std::nullopt);

/// Classifies eq through the Jacobian at its state. The Routh-Hurwitz verdict
/// is attached; a hyperbolic disagreement with the eigenvalues throws
/// std::logic_error. Absent or non-stationary equilibria throw ValidationError.
StabilityClass classify(Variant variant, const Params& p, const Equilibrium& eq,
                        std::optional<double> tol = std::nullopt);

struct CoexistenceCertificate {
  Vec4 state;
  double trace;
  double scale;  // sum of |diagonal terms| making up the trace
  RouthHurwitzVerdict routh_hurwitz;
  StabilityClass stability;
};

/// Trace of the Jacobian at the Malthus coexistence point vanishes, so the
/// first Routh-Hurwitz condition can never hold. Throws ValidationError when
/// that point is infeasible.
CoexistenceCertificate malthus_coexistence_certificate(const Params& p);

struct BranchEntry {
  EquilibriumLabel label{};
  bool feasible = false;
  std::optional<StabilityKind> kind;  // only for feasible equilibria
  Vec4 state = Vec4::Zero();
};

struct BranchRow {
  double value = 0.0;
  ThresholdPair rho{};
  std::vector<BranchEntry> entries;
};

struct Crossing {
  std::string threshold;  // "rho1" or "rho2"
  double value = 0.0;
  std::size_t lower_row = 0;  // bracketing grid rows
  std::size_t upper_row = 0;
  BranchRow row;              // everything evaluated at the refined value
};

struct BranchTable {
  Variant variant{};
  std::string param;
  std::vector<BranchRow> rows;  // sorted by value
  std::vector<Crossing> crossings;
};

BranchRow evaluate_branch_row(Variant variant, const Params& p, std::string_view param, double value);

/// Grid of n values on [lo, hi] (n = 1 gives lo only). Each sign change of
/// rho1 - 1 or rho2 - 1 between neighbouring rows is refined by bisection.
/// Requires a logistic variant.
BranchTable bifurcation_sweep(Variant variant, const Params& p, std::string_view param, double lo,
                              double hi, int n);

}  // namespace ecochain
