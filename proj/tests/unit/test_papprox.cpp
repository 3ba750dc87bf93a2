#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fixtures.hpp"
#include "infbern/bernoulli.hpp"
#include "infbern/errors.hpp"
#include "infbern/papprox.hpp"

namespace infbern {
namespace {

constexpr double kPi = std::numbers::pi;

// Closed forms for the gradient integral over Ball(n, R):
//   p-harmonic: n kappa a^(p-1) (R^a - s^a)^(1-p), a = (p - n)/(p - 1);
//   cone:       kappa (R^n - s^n) / (R - s)^p.
double log_p_harmonic_integral(int n, double R, double s, double p) {
  const double a = (p - n) / (p - 1.0);
  return std::log(n * unit_ball_volume(n)) + (p - 1.0) * std::log(a) +
         (1.0 - p) * std::log(std::pow(R, a) - std::pow(s, a));
}

double log_cone_integral(int n, double R, double s, double p) {
  return std::log(unit_ball_volume(n) * (std::pow(R, n) - std::pow(s, n))) - p * std::log(R - s);
}

TEST(Papprox, CandidateShapes) {
  const auto ball = ConvexDomain::ball(2, 1.0);
  const auto u = RadialCandidate::p_harmonic(ball, 0.3, 10.0);
  EXPECT_NEAR(u.exponent(), 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(u.value(0.3), 0.0, 1e-15);
  EXPECT_NEAR(u.value(1.0), 1.0, 1e-15);
  EXPECT_EQ(u.value(0.1), 0.0);
  EXPECT_NEAR(u.positive_volume(), kPi * (1.0 - 0.09), 1e-14);
  const auto c = RadialCandidate::cone(ball, 0.5, 10.0);
  EXPECT_NEAR(c.gradient(0.7), 2.0, 1e-15);
  EXPECT_NEAR(c.value(0.75), 0.5, 1e-15);
  const auto k = RadialCandidate::constant(ball, 10.0);
  EXPECT_EQ(k.gradient(0.5), 0.0);
  EXPECT_NEAR(k.positive_volume(), kPi, 1e-15);
}

TEST(Papprox, CandidatePreconditions) {
  const auto ball = ConvexDomain::ball(2, 1.0);
  EXPECT_THROW(RadialCandidate::p_harmonic(ball, 0.3, 2.0), DomainError);
  EXPECT_THROW(RadialCandidate::p_harmonic(ball, 0.3, 321.0), DomainError);
  EXPECT_THROW(RadialCandidate::p_harmonic(ball, 1.0, 10.0), DomainError);
  EXPECT_THROW(RadialCandidate::p_harmonic(ConvexDomain::rectangle(1, 1), 0.1, 10.0), UnsupportedDomain);
}

TEST(Papprox, GradientIntegralMatchesClosedForm) {
  for (int n : {2, 3}) {
    for (double p : {n + 0.5, 10.0, 40.0, 160.0, 320.0}) {
      for (double s : {0.0, 0.1, 0.4, 0.9, 0.999}) {
        const auto ball = ConvexDomain::ball(n, 1.3);
        const double ph = log_gradient_integral(RadialCandidate::p_harmonic(ball, s * 1.3, p));
        EXPECT_NEAR(ph, log_p_harmonic_integral(n, 1.3, s * 1.3, p), 1e-9 * std::max(1.0, std::abs(ph)))
            << n << " " << p << " " << s;
        const double co = log_gradient_integral(RadialCandidate::cone(ball, s * 1.3, p));
        EXPECT_NEAR(co, log_cone_integral(n, 1.3, s * 1.3, p), 1e-9 * std::max(1.0, std::abs(co)))
            << n << " " << p << " " << s;
      }
    }
  }
  EXPECT_EQ(log_gradient_integral(RadialCandidate::constant(ConvexDomain::ball(2, 1.0), 10.0)),
            -std::numeric_limits<double>::infinity());
}

TEST(Papprox, EnergyAssembly) {
  const auto ball = ConvexDomain::ball(2, 1.0);
  const auto u = RadialCandidate::cone(ball, 0.5, 4.0);
  const auto e = j_p_lambda_radial(u, 1.5, 3.0);
  const double grad = 0.25 * std::pow(2.0 / 1.5, 4) * kPi * 0.75;
  EXPECT_NEAR(e.gradient, grad, 1e-12);
  EXPECT_DOUBLE_EQ(e.multiplier, 1.5);
  EXPECT_NEAR(e.measure, 0.75 * 3.0 * kPi * 0.75, 1e-13);
  EXPECT_NEAR(e.total, e.gradient + e.multiplier + e.measure, 1e-13);
  const auto k = j_p_lambda_radial(RadialCandidate::constant(ball, 4.0), 1.5, 3.0);
  EXPECT_EQ(k.gradient, 0.0);
  EXPECT_NEAR(k.total, 1.5 + 0.75 * 3.0 * kPi, 1e-13);
  EXPECT_THROW(j_p_lambda_radial(u, 0.0, 3.0), DomainError);
}

TEST(Papprox, DiagnosticIsMinimumOverSlopes) {
  const auto ball = ConvexDomain::ball(2, 1.0);
  for (double p : {4.0, 20.0, 100.0}) {
    const auto u = RadialCandidate::p_harmonic(ball, 0.3, p);
    const double diag = double_functional_diagnostic(u, 3.0);
    double best = 1e300;
    for (int i = 1; i <= 20000; ++i) {
      best = std::min(best, j_p_lambda_radial(u, 0.5 + 10.0 * i / 20000.0, 3.0).total);
    }
    EXPECT_LE(diag, best + 1e-12);
    EXPECT_NEAR(diag, best, 1e-6) << p;
  }
}

TEST(Papprox, RadialMinimumBeatsEveryFamilyMember) {
  const auto ball = ConvexDomain::ball(2, 1.0);
  const double slope = 3.7;
  const auto m = radial_p_minimum(ball, 20.0, slope, 3.0);
  for (double s = 0.0; s < 0.99; s += 0.01) {
    EXPECT_LE(m.energy.total,
              j_p_lambda_radial(RadialCandidate::p_harmonic(ball, s, 20.0), slope, 3.0).total + 1e-12);
  }
  EXPECT_EQ(radial_p_minimum(ball, 20.0, slope, 0.0).branch, CandidateKind::Constant);
  EXPECT_THROW(radial_p_minimum(ConvexDomain::rectangle(1, 1), 20.0, slope, 3.0), UnsupportedDomain);
}

TEST(Papprox, DoubleInfimumBounds) {
  const auto ball = ConvexDomain::ball(2, 1.0);
  const auto prof = build_profile(ball);
  const double m = m_lambda(prof, 3.0);
  double prev = 0.0;
  for (double p : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    const auto d = double_infimum(ball, p, 3.0);
    EXPECT_GE(d.energy, prev);
    EXPECT_LE(d.energy, kPi / p + m + 1e-9);
    EXPECT_GE(d.energy, (p - 1.0) / p * m - 1e-9);
    EXPECT_GE(d.lambda_opt, d.lambda_lo);
    EXPECT_LE(d.lambda_opt, d.lambda_hi);
    prev = d.energy;
  }
  EXPECT_LT(std::abs(prev - m) / m, 0.02);
  EXPECT_THROW(double_infimum(ball, 10.0, 1.0), HypothesisViolation);
}

TEST(Papprox, LimitFunctionalBranches) {
  const auto prof = build_profile(testing::unit_disk());
  EXPECT_NEAR(j_lambda_limit(prof, 0.5, 3.0), 0.5 + 3.0 * kPi, 1e-14);
  EXPECT_NEAR(j_lambda_limit(prof, 2.0, 3.0), 2.0 + 3.0 * (kPi - kPi * 0.25), 1e-14);
  // Continuous at the kink lambda = 1/R.
  EXPECT_NEAR(j_lambda_limit(prof, 1.0, 3.0), 1.0 + 3.0 * kPi, 1e-14);
}

TEST(Papprox, CeIdentity) {
  const auto prof = build_profile(testing::unit_disk());
  const auto ce = ce_identity_check(prof, 3.0);
  EXPECT_LT(ce.gap, 1e-9);
  EXPECT_NEAR(ce.lambda_opt, 3.71077881723665554953857674277, 1e-6);
  EXPECT_NEAR(ce.rhs, 8.10600647139822689501454763803, 1e-10);
  const auto low = ce_identity_check(prof, 1.0);
  EXPECT_NEAR(low.lhs, kPi, 1e-12);
  EXPECT_GT(low.lhs_restricted, low.lhs);
  EXPECT_LT(ce_identity_check(build_profile(testing::unit_square_polygon()), 20.0).gap, 1e-5);
}

TEST(Papprox, ConvergenceTable) {
  const std::vector<double> ps{10.0, 40.0};
  const auto t = convergence_table(ConvexDomain::ball(2, 1.0), 3.0, ps);
  ASSERT_EQ(t.columns.size(), 6u);
  EXPECT_EQ(t.columns.front(), "p");
  EXPECT_EQ(t.columns.back(), "relative_gap");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(t.rows[1][0], 40.0);
  EXPECT_LT(t.rows[1][5], t.rows[0][5]);
}

}  // namespace
}  // namespace infbern
