#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "ecochain/stability.hpp"
#include "test_support.hpp"

using namespace ecochain;
using ecochain::testing::fig1_params;
using ecochain::testing::fig4_params;
using ecochain::testing::Sampler;

namespace {

const Equilibrium& get(const std::vector<Equilibrium>& eqs, EquilibriumLabel label) {
  auto it = std::find_if(eqs.begin(), eqs.end(), [&](const Equilibrium& e) { return e.label == label; });
  REQUIRE(it != eqs.end());
  return *it;
}

const BranchEntry& entry(const BranchRow& row, EquilibriumLabel label) {
  auto it = std::find_if(row.entries.begin(), row.entries.end(),
                         [&](const BranchEntry& e) { return e.label == label; });
  REQUIRE(it != row.entries.end());
  return *it;
}

CharPoly monic(std::vector<double> c) { return CharPoly{std::move(c)}; }

// Real matrix similar to a block diagonal with the requested spectrum.
struct RandomSpectrum {
  MatrixXd matrix;
  std::vector<Complex> eigs;
};

RandomSpectrum random_spectrum(Sampler& s, int n) {
  auto real_part = [&] {
    const double mag = s.uniform(1e-6, 2.0);
    return s.uniform(0, 1) < 0.5 ? -mag : mag;
  };
  RandomSpectrum out;
  MatrixXd D = MatrixXd::Zero(n, n);
  int i = 0;
  while (i < n) {
    if (i + 1 < n && s.uniform(0, 1) < 0.5) {
      const double a = real_part(), b = s.uniform(0.1, 2.0);
      D(i, i) = a;
      D(i, i + 1) = b;
      D(i + 1, i) = -b;
      D(i + 1, i + 1) = a;
      out.eigs.emplace_back(a, b);
      out.eigs.emplace_back(a, -b);
      i += 2;
    } else {
      D(i, i) = real_part();
      out.eigs.emplace_back(D(i, i), 0.0);
      i += 1;
    }
  }
  MatrixXd T = MatrixXd::Identity(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) T(r, c) += s.uniform(-0.4, 0.4);
  }
  out.matrix = T * D * T.inverse();
  return out;
}

}  // namespace

TEST_CASE("eigenvalues of a diagonal matrix") {
  MatrixXd D = MatrixXd::Zero(4, 4);
  D.diagonal() << -0.4, -0.2, -0.3, 0.5;
  const auto eigs = eigenvalues(D);
  REQUIRE(eigs.size() == 4);
  CHECK(eigs[0] == Complex(0.5, 0));
  CHECK(eigs[1] == Complex(-0.2, 0));
  CHECK(eigs[2] == Complex(-0.3, 0));
  CHECK(eigs[3] == Complex(-0.4, 0));
}

TEST_CASE("eigenvalues at the Malthus predator-free point") {
  const auto p = fig1_params();
  const auto eigs = eigenvalues(jacobian(Variant::MalthusEpidemic, p, Vec4(0, 1.25, 0, 1.0)));
  // +-i sqrt(mu r), (beta r - nu b) / b, (r f - b tau) / b
  CHECK(std::abs(eigs[0] - Complex(0.075, 0)) < 1e-12);
  CHECK(std::abs(eigs[1] - Complex(0, std::sqrt(0.1))) < 1e-12);
  CHECK(std::abs(eigs[2] - Complex(0, -std::sqrt(0.1))) < 1e-12);
  CHECK(std::abs(eigs[3] - Complex(-0.15, 0)) < 1e-12);
  CHECK(eigs[1] == std::conj(eigs[2]));
}

TEST_CASE("eigenvalues of an embedded companion block") {
  MatrixXd M = MatrixXd::Zero(4, 4);
  M(0, 1) = 1.0;
  M(1, 0) = -1.0;  // lambda^2 + 1
  M(2, 2) = -1.0;
  M(3, 3) = -2.0;
  const auto eigs = eigenvalues(M);
  CHECK(std::abs(eigs[0] - Complex(0, 1)) < 1e-14);
  CHECK(std::abs(eigs[1] - Complex(0, -1)) < 1e-14);
  CHECK(std::abs(eigs[2] - Complex(-1, 0)) < 1e-14);
  CHECK(std::abs(eigs[3] - Complex(-2, 0)) < 1e-14);

  MatrixXd bad = M;
  bad(0, 0) = NAN;
  CHECK_THROWS_AS(eigenvalues(bad), ValidationError);
  CHECK_THROWS_AS(char_poly(bad), ValidationError);
}

TEST_CASE("eigenpairs have small residuals and come in conjugate pairs") {
  Sampler s(101);
  for (int k = 0; k < 200; ++k) {
    const int n = k % 2 ? 4 : 3;
    MatrixXd M(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) M(i, j) = s.uniform(-2, 2);
    }
    const auto eigs = eigenvalues(M);
    for (const auto& z : eigs) {
      const Eigen::MatrixXcd shifted = M.cast<Complex>() - z * Eigen::MatrixXcd::Identity(n, n);
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
      CHECK(svd.singularValues()(n - 1) < 1e-8 * M.norm());
      if (z.imag() != 0.0) {
        CHECK(std::count(eigs.begin(), eigs.end(), std::conj(z)) == 1);
      }
    }
  }
}

TEST_CASE("char_poly") {
  const auto id = char_poly(MatrixXd::Identity(4, 4));
  const std::vector<double> expected = {1, -4, 6, -4, 1};
  for (int k = 0; k <= 4; ++k) CHECK(id[k] == doctest::Approx(expected[static_cast<std::size_t>(k)]));

  const auto p = fig1_params();
  const MatrixXd J = jacobian(Variant::MalthusEpidemic, p, Vec4(0.1875, 1.25, 0.5, 2.03125));
  CHECK(std::abs(char_poly(J)[1]) < 1e-12);
  CHECK(char_poly(J)[1] == doctest::Approx(-J.trace()));
}

TEST_CASE("char_poly agrees with the product over eigenvalues") {
  Sampler s(103);
  for (int k = 0; k < 200; ++k) {
    MatrixXd M(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) M(i, j) = s.uniform(-2, 2);
    }
    const auto direct = char_poly(M);
    const auto from_roots = poly_from_roots(eigenvalues(M));
    for (int i = 0; i <= 4; ++i) {
      CHECK(std::abs(direct[i] - from_roots[i]) < 1e-8 * std::max(1.0, std::abs(direct[i])));
    }
  }
}

TEST_CASE("routh_hurwitz") {
  const auto zero_a1 = routh_hurwitz(monic({1, 0, 2, 1, 3}));
  CHECK(zero_a1.outcome == RouthHurwitzOutcome::Marginal);
  CHECK(zero_a1.condition == "a1>0");

  CHECK(routh_hurwitz(monic({1, 6, 11, 6})).outcome == RouthHurwitzOutcome::Pass);

  // (lambda^2 + 1)(lambda + 1)(lambda + 2)
  const auto center = routh_hurwitz(monic({1, 3, 3, 3, 2}));
  CHECK(center.outcome == RouthHurwitzOutcome::Marginal);
  CHECK(center.condition == "a1*a2*a3>a3^2+a1^2*a4");

  // (lambda - 1)(lambda + 2)(lambda + 3) = lambda^3 + 4 lambda^2 + lambda - 6
  const auto fail = routh_hurwitz(monic({1, 4, 1, -6}));
  CHECK(fail.outcome == RouthHurwitzOutcome::Fail);
  CHECK(fail.condition == "a3>0");

  CHECK_THROWS_AS(routh_hurwitz(monic({1, 2, 1})), ValidationError);
}

TEST_CASE("Routh-Hurwitz agrees with eigenvalue signs on random matrices") {
  Sampler s(107);
  int stable = 0;
  for (int k = 0; k < 500; ++k) {
    const auto rs = random_spectrum(s, k % 2 ? 4 : 3);
    const bool all_negative =
        std::all_of(rs.eigs.begin(), rs.eigs.end(), [](const Complex& z) { return z.real() < 0.0; });
    const bool pass = routh_hurwitz(char_poly(rs.matrix)).outcome == RouthHurwitzOutcome::Pass;
    CHECK(pass == all_negative);
    stable += all_negative;
  }
  CHECK(stable > 20);
}

TEST_CASE("Routh-Hurwitz resolves a pair 1e-6 from the axis") {
  for (double sign : {-1.0, 1.0}) {
    MatrixXd D = MatrixXd::Zero(4, 4);
    D(0, 0) = D(1, 1) = sign * 1e-6;
    D(0, 1) = 0.8;
    D(1, 0) = -0.8;
    D(2, 2) = -0.7;
    D(3, 3) = -1.9;
    MatrixXd T = MatrixXd::Identity(4, 4);
    T(0, 2) = 0.3;
    T(1, 3) = -0.2;
    T(3, 0) = 0.25;
    const auto verdict = routh_hurwitz(char_poly(T * D * T.inverse()));
    CHECK(verdict.outcome == (sign < 0 ? RouthHurwitzOutcome::Pass : RouthHurwitzOutcome::Fail));
  }
}

TEST_CASE("classify") {
  const auto p4 = fig4_params();
  const auto e2 = get(logistic_boundary_equilibria(p4), EquilibriumLabel::E2);
  const auto c2 = classify(Variant::LogisticEpidemic, p4, e2);
  CHECK(c2.kind == StabilityKind::Unstable);
  // (-r, -nu, -tau, lK - mu)
  std::vector<double> re;
  for (const auto& z : c2.eigenvalues) re.push_back(z.real());
  CHECK(re[0] == doctest::Approx(0.4));
  CHECK(re[1] == doctest::Approx(-0.2));
  CHECK(re[2] == doctest::Approx(-0.2));
  CHECK(re[3] == doctest::Approx(-1.3));

  const auto p1 = fig1_params();
  const auto e1 = get(malthus_equilibria(p1), EquilibriumLabel::E1t);
  const auto c1 = classify(Variant::MalthusEpidemic, p1, e1);
  CHECK(c1.kind == StabilityKind::Unstable);
  CHECK(c1.nonhyperbolic);

  auto p3 = p4;
  p3.f = 0.1;
  const auto e3 = get(logistic_boundary_equilibria(p3), EquilibriumLabel::E3);
  const auto c3 = classify(Variant::LogisticEpidemic, p3, e3);
  CHECK(c3.kind == StabilityKind::Stable);
  CHECK(c3.routh_hurwitz.outcome == RouthHurwitzOutcome::Pass);

  Equilibrium fake = e3;
  fake.state[kS] += 0.1;
  CHECK_THROWS_AS(classify(Variant::LogisticEpidemic, p3, fake), ValidationError);
  CHECK_THROWS_AS(classify(Variant::MalthusEpidemic, p1, get(malthus_equilibria(p1), EquilibriumLabel::E2)),
                  ValidationError);
}

TEST_CASE("classify_matrix at the neutral Malthus point without the unstable direction") {
  // r beta / (b nu) < 1 and r f / (b tau) < 1: only the centre pair is on the axis.
  auto p = fig1_params();
  p.nu = 0.5;
  p.tau = 0.6;
  const auto e1 = get(malthus_equilibria(p), EquilibriumLabel::E1t);
  const auto c = classify(Variant::MalthusEpidemic, p, e1);
  CHECK(c.kind == StabilityKind::Nonhyperbolic);
}

TEST_CASE("Malthus coexistence certificate") {
  const auto cert = malthus_coexistence_certificate(fig1_params());
  CHECK(std::abs(cert.trace) < 1e-10 * cert.scale);
  CHECK(cert.routh_hurwitz.outcome != RouthHurwitzOutcome::Pass);
  CHECK(cert.routh_hurwitz.condition == "a1>0");

  Sampler s(109);
  int found = 0;
  for (int k = 0; k < 50000 && found < 100; ++k) {
    const Params p = s.params();
    if (!get(malthus_equilibria(p), EquilibriumLabel::Estar_t).feasible) continue;
    const auto c = malthus_coexistence_certificate(p);
    CHECK(std::abs(c.trace) < 1e-10 * c.scale);
    CHECK(c.routh_hurwitz.outcome != RouthHurwitzOutcome::Pass);
    ++found;
  }
  CHECK(found == 100);

  auto bad = fig1_params();
  bad.nu = 0.5;
  CHECK_THROWS_AS(malthus_coexistence_certificate(bad), ValidationError);
}

TEST_CASE("D* is stable whenever it is feasible") {
  Sampler s(113);
  int found = 0;
  for (int k = 0; k < 50000 && found < 200; ++k) {
    const Params p = s.params();
    if (!(thresholds(p).rho2 > 1.0)) continue;
    const auto d_star = get(disease_free_equilibria(p), EquilibriumLabel::Dstar);
    CHECK(classify(Variant::LogisticDiseaseFree, p, d_star).kind == StabilityKind::Stable);
    ++found;
  }
  CHECK(found == 200);
}

TEST_CASE("K sweep of the disease-free model crosses rho1 = 1 at K = mu / l") {
  const auto p = fig4_params();
  const auto table = bifurcation_sweep(Variant::LogisticDiseaseFree, p, "K", 0.1, 1.0, 91);
  CHECK(table.rows.size() == 91);
  REQUIRE(table.crossings.size() == 1);
  const auto& c = table.crossings[0];
  CHECK(c.threshold == "rho1");
  CHECK(std::abs(c.value - 1.0 / 3.0) < 1e-8);
  CHECK(table.rows[c.lower_row].value < c.value);
  CHECK(table.rows[c.upper_row].value > c.value);

  for (const auto& row : table.rows) {
    const auto& d1 = entry(row, EquilibriumLabel::D1);
    const auto& d_hat = entry(row, EquilibriumLabel::Dhat);
    if (row.value < c.value) {
      CHECK(d1.kind == StabilityKind::Stable);
      CHECK_FALSE(d_hat.feasible);
    } else if (row.value > c.value) {
      CHECK(d1.kind == StabilityKind::Unstable);
      CHECK(d_hat.feasible);
      CHECK(d_hat.kind == StabilityKind::Stable);
    }
  }
  // Transcritical collision.
  CHECK((entry(c.row, EquilibriumLabel::D1).state - entry(c.row, EquilibriumLabel::Dhat).state)
            .cwiseAbs()
            .maxCoeff() < 1e-6);
}

TEST_CASE("extended K sweep finds the rho2 = 1 crossing") {
  const auto p = fig4_params();
  const auto table = bifurcation_sweep(Variant::LogisticDiseaseFree, p, "K", 0.1, 2.0, 96);
  REQUIRE(table.crossings.size() == 2);
  const double expected = (p.mu / p.l) / (1.0 - p.b * p.tau / (p.f * p.r));
  CHECK(expected == doctest::Approx(1.0833333333));
  const auto& c = table.crossings[1];
  CHECK(c.threshold == "rho2");
  CHECK(std::abs(c.value - expected) < 1e-8);
  CHECK((entry(c.row, EquilibriumLabel::Dhat).state - entry(c.row, EquilibriumLabel::Dstar).state)
            .cwiseAbs()
            .maxCoeff() < 1e-6);
  for (const auto& row : table.rows) {
    const auto& d_star = entry(row, EquilibriumLabel::Dstar);
    const auto& d_hat = entry(row, EquilibriumLabel::Dhat);
    if (row.value > expected) {
      CHECK(d_star.feasible);
      CHECK(d_star.kind == StabilityKind::Stable);
      CHECK(d_hat.kind == StabilityKind::Unstable);
    } else if (row.value > 1.0 / 3.0) {
      CHECK_FALSE(d_star.feasible);
      CHECK(d_hat.kind == StabilityKind::Stable);
    }
  }
}

TEST_CASE("sweep edge cases") {
  const auto p = fig4_params();
  const auto single = bifurcation_sweep(Variant::LogisticDiseaseFree, p, "K", 0.1, 1.0, 1);
  CHECK(single.rows.size() == 1);
  CHECK(single.crossings.empty());
  CHECK_THROWS_AS(bifurcation_sweep(Variant::LogisticDiseaseFree, p, "kappa", 0.1, 1.0, 5), ValidationError);
  CHECK_THROWS_AS(bifurcation_sweep(Variant::LogisticDiseaseFree, p, "K", 1.0, 0.1, 5), ValidationError);
  CHECK_THROWS_AS(bifurcation_sweep(Variant::LogisticDiseaseFree, p, "K", 0.1, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(bifurcation_sweep(Variant::MalthusEpidemic, p, "K", 0.1, 1.0, 5), ValidationError);

  // The epidemic model inherits the same rho1 threshold through E1.
  const auto epi = bifurcation_sweep(Variant::LogisticEpidemic, p, "l", 0.1, 0.85, 16);
  REQUIRE_FALSE(epi.crossings.empty());
  CHECK(epi.crossings[0].value == doctest::Approx(p.mu / p.K));
}
