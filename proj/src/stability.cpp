#include "ecochain/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ecochain {

namespace {

void check_matrix(const MatrixXd& M) {
  if (M.rows() != M.cols() || M.rows() == 0) throw ValidationError("matrix must be square and non-empty");
  if (!M.allFinite()) throw ValidationError("matrix has non-finite entries");
}

}  // namespace

std::vector<Complex> eigenvalues(const MatrixXd& M) {
  check_matrix(M);
  Eigen::EigenSolver<MatrixXd> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
  std::vector<Complex> eigs(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(eigs.begin(), eigs.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return eigs;
}

CharPoly char_poly(const MatrixXd& M) {
  check_matrix(M);
  const Eigen::Index n = M.rows();
  CharPoly cp;
  cp.coeffs.assign(static_cast<std::size_t>(n) + 1, 0.0);
  cp.coeffs[0] = 1.0;
  MatrixXd acc = MatrixXd::Zero(n, n);
  const MatrixXd eye = MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    acc = M * acc + cp.coeffs[static_cast<std::size_t>(k - 1)] * eye;
    cp.coeffs[static_cast<std::size_t>(k)] = -(M * acc).trace() / static_cast<double>(k);
  }
  return cp;
}

CharPoly poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const auto& root : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= root * c[i];
    }
    c = std::move(next);
  }
  CharPoly cp;
  for (const auto& z : c) cp.coeffs.push_back(z.real());
  return cp;
}

std::string_view outcome_name(RouthHurwitzOutcome o) {
  switch (o) {
    case RouthHurwitzOutcome::Pass: return "pass";
    case RouthHurwitzOutcome::Fail: return "fail";
    case RouthHurwitzOutcome::Marginal: return "marginal";
  }
  return "?";
}

RouthHurwitzVerdict routh_hurwitz(const CharPoly& cp, double tol) {
  if (cp.coeffs.empty() || cp[0] != 1.0) throw ValidationError("Routh-Hurwitz needs a monic polynomial");
  RouthHurwitzVerdict verdict;
  auto& qs = verdict.quantities;
  if (cp.degree() == 3) {
    const double a1 = cp[1], a2 = cp[2], a3 = cp[3];
    qs = {{"a1>0", a1}, {"a3>0", a3}, {"a1*a2>a3", a1 * a2 - a3}};
  } else if (cp.degree() == 4) {
    const double a1 = cp[1], a2 = cp[2], a3 = cp[3], a4 = cp[4];
    qs = {{"a1>0", a1},
          {"a3>0", a3},
          {"a4>0", a4},
          {"a1*a2*a3>a3^2+a1^2*a4", a1 * a2 * a3 - a3 * a3 - a1 * a1 * a4}};
  } else {
    throw ValidationError("Routh-Hurwitz supports degree 3 or 4, got " + std::to_string(cp.degree()));
  }
  for (const auto& [name, value] : qs) {
    if (std::abs(value) <= tol) {
      verdict.outcome = RouthHurwitzOutcome::Marginal;
      verdict.condition = name;
      return verdict;
    }
    if (value < 0.0) {
      verdict.outcome = RouthHurwitzOutcome::Fail;
      verdict.condition = name;
      return verdict;
    }
  }
  return verdict;
}

std::string_view kind_name(StabilityKind k) {
  switch (k) {
    case StabilityKind::Stable: return "stable";
    case StabilityKind::Unstable: return "unstable";
    case StabilityKind::Nonhyperbolic: return "nonhyperbolic";
  }
  return "?";
}

double hyperbolicity_tol(const std::vector<Complex>& eigs) {
  double radius = 0.0;
  for (const auto& z : eigs) radius = std::max(radius, std::abs(z));
  return 1e-9 * (1.0 + radius);
}

StabilityClass classify_matrix(const MatrixXd& J, std::optional<double> tol) {
  StabilityClass sc;
  sc.eigenvalues = eigenvalues(J);
  sc.tol = tol.value_or(hyperbolicity_tol(sc.eigenvalues));
  bool unstable = false;
  for (const auto& z : sc.eigenvalues) {
    if (z.real() > sc.tol) unstable = true;
    if (std::abs(z.real()) <= sc.tol) sc.nonhyperbolic = true;
  }
  sc.kind = unstable ? StabilityKind::Unstable
                     : (sc.nonhyperbolic ? StabilityKind::Nonhyperbolic : StabilityKind::Stable);

  sc.char_poly = char_poly(J);
  if (sc.char_poly.degree() == 3 || sc.char_poly.degree() == 4) {
    sc.routh_hurwitz = routh_hurwitz(sc.char_poly);
    const auto outcome = sc.routh_hurwitz.outcome;
    if (outcome != RouthHurwitzOutcome::Marginal && !sc.nonhyperbolic) {
      const bool rh_stable = outcome == RouthHurwitzOutcome::Pass;
      if (rh_stable != (sc.kind == StabilityKind::Stable)) {
        throw std::logic_error("Routh-Hurwitz verdict disagrees with eigenvalue classification");
      }
    }
  }
  return sc;
}

StabilityClass classify(Variant variant, const Params& p, const Equilibrium& eq, std::optional<double> tol) {
  if (eq.provenance == Provenance::Absent) {
    throw ValidationError(std::string(label_name(eq.label)) + " is absent in this variant");
  }
  const double bound = 1e-10 * (1.0 + eq.state.norm());
  const double res = residual(variant, p, eq.state);
  if (!(res < bound)) {
    throw ValidationError(std::string(label_name(eq.label)) + " is not an equilibrium (residual " +
                          std::to_string(res) + ")");
  }
  return classify_matrix(evaluate_jacobian(variant, p, eq.state), tol);
}

CoexistenceCertificate malthus_coexistence_certificate(const Params& p) {
  const auto eqs = malthus_equilibria(p);
  const auto it = std::find_if(eqs.begin(), eqs.end(),
                               [](const Equilibrium& e) { return e.label == EquilibriumLabel::Estar_t; });
  if (it == eqs.end() || !it->feasible) {
    throw ValidationError("Malthus coexistence equilibrium is infeasible");
  }
  CoexistenceCertificate cert;
  cert.state = it->state;
  const MatrixXd J = evaluate_jacobian(Variant::MalthusEpidemic, p, it->state);
  cert.trace = J.trace();
  // Each diagonal entry is a sum of terms that cancel at the equilibrium;
  // the scale is the largest magnitude among those terms.
  const Vec4& x = it->state;
  cert.scale = std::max({p.g * x[kI], p.f * x[kS], p.tau, p.l * x[kV], p.mu, p.beta * x[kI], p.q * x[kP],
                         p.nu, p.beta * x[kS], p.c * x[kP], p.r, p.b * x[kS]});
  cert.stability = classify_matrix(J);
  cert.routh_hurwitz = cert.stability.routh_hurwitz;
  return cert;
}

BranchRow evaluate_branch_row(Variant variant, const Params& base, std::string_view param, double value) {
  Params p = base;
  parameter(p, param) = value;
  require_valid(p, variant);
  BranchRow row;
  row.value = value;
  row.rho = thresholds(p);
  for (const auto& eq : equilibria(variant, p)) {
    BranchEntry entry;
    entry.label = eq.label;
    entry.feasible = eq.feasible;
    entry.state = eq.state;
    if (eq.feasible) entry.kind = classify(variant, p, eq).kind;
    row.entries.push_back(std::move(entry));
  }
  return row;
}

BranchTable bifurcation_sweep(Variant variant, const Params& p, std::string_view param, double lo, double hi,
                              int n) {
  if (!is_parameter_name(param)) throw ValidationError("unknown parameter \"" + std::string(param) + "\"");
  if (is_malthus(variant)) throw ValidationError("threshold sweeps require a finite carrying capacity");
  if (n < 1) throw ValidationError("sweep needs n >= 1");
  if (!(lo < hi)) throw ValidationError("sweep needs lo < hi");

  BranchTable table;
  table.variant = variant;
  table.param = std::string(param);
  for (int i = 0; i < n; ++i) {
    const double value = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    table.rows.push_back(evaluate_branch_row(variant, p, param, value));
  }

  auto excess = [&](double value, int which) {
    Params q = p;
    parameter(q, param) = value;
    const auto rho = thresholds(q);
    return (which == 1 ? rho.rho1 : rho.rho2) - 1.0;
  };

  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    for (int which : {1, 2}) {
      double a = table.rows[i].value, b = table.rows[i + 1].value;
      double fa = excess(a, which), fb = excess(b, which);
      if ((fa >= 0.0) == (fb >= 0.0)) continue;
      // Keep the invariant fa < 0 <= fb or fa >= 0 > fb while halving.
      for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = excess(m, which);
        if ((fm >= 0.0) == (fa >= 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
          fb = fm;
        }
      }
      const double root = std::abs(fa) <= std::abs(fb) ? a : b;
      Crossing c;
      c.threshold = which == 1 ? "rho1" : "rho2";
      c.value = root;
      c.lower_row = i;
      c.upper_row = i + 1;
      c.row = evaluate_branch_row(variant, p, param, root);
      table.crossings.push_back(std::move(c));
    }
  }
  std::sort(table.crossings.begin(), table.crossings.end(),
            [](const Crossing& x, const Crossing& y) { return x.value < y.value; });
  return table;
}

}  // namespace ecochain
