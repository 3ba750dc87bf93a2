#pragma once

#include <span>

#include "infbern/csv.hpp"
#include "infbern/geometry.hpp"
#include "infbern/profile.hpp"

namespace infbern {

enum class CandidateKind {
  PHarmonic,  // (rho^a - s^a) / (R^a - s^a) with a = (p - n)/(p - 1)
  Cone,       // (rho - s) / (R - s), slope 1/(R - s)
  Constant,   // u = 1 on the whole ball
};

/// Radial competitor on Ball(n, R) vanishing on the core {rho <= s}.
struct RadialCandidate {
  int n = 2;
  double R = 1.0;
  double s = 0.0;
  double p = 4.0;
  CandidateKind kind = CandidateKind::PHarmonic;

  /// Throws DomainError unless p > n, p <= 320 and 0 <= s < R.
  static RadialCandidate p_harmonic(const ConvexDomain& ball, double s, double p);
  static RadialCandidate cone(const ConvexDomain& ball, double s, double p);
  static RadialCandidate constant(const ConvexDomain& ball, double p);

  double exponent() const;  // a above; 1 for the cone
  double value(double rho) const;
  double gradient(double rho) const;  // |u'(rho)|
  double positive_volume() const;     // |{u > 0}|
};

struct EnergyReport {
  double gradient = 0.0;    // (1/p) int (|grad u| / lambda)^p
  double multiplier = 0.0;  // lambda
  double measure = 0.0;     // ((p-1)/p) Lambda |{u > 0}|
  double total = 0.0;
  double log_gradient = 0.0;  // natural log of the gradient term (-inf for constants)
};

/// log of int_{B} |grad u|^p, by composite Gauss-Legendre on 15 panels graded
/// geometrically towards the core radius plus an exact innermost piece of
/// relative width 1e-12. -inf for the constant.
double log_gradient_integral(const RadialCandidate& u);

EnergyReport j_p_lambda_radial(const RadialCandidate& u, double slope, double weight);

struct RadialMinimum {
  EnergyReport energy;
  double s_opt = 0.0;
  CandidateKind branch = CandidateKind::PHarmonic;
};

/// Minimum over the p-harmonic family s in [0, R) and the constant candidate.
/// UnsupportedDomain for non-balls.
RadialMinimum radial_p_minimum(const ConvexDomain& ball, double p, double slope, double weight);

struct DoubleInfimum {
  double energy = 0.0;
  double lambda_opt = 0.0;
  RadialMinimum inner;
  double lambda_lo = 0.0;  // search bracket [1/R, C_Lambda]
  double lambda_hi = 0.0;
};

/// inf over slopes in [1/R, C_Lambda] of radial_p_minimum, for weights at or
/// above lambda_inf (HypothesisViolation otherwise).
DoubleInfimum double_infimum(const ConvexDomain& ball, double p, double weight);

/// lambda + Lambda |Omega| below 1/R, lambda + Lambda (|Omega| - V(1/lambda)) above.
double j_lambda_limit(const ParallelSetProfile& profile, double slope, double weight);

struct CeIdentity {
  double lhs = 0.0;             // inf over all lambda > 0 of j_lambda_limit
  double lhs_restricted = 0.0;  // inf over lambda in [1/R, C]
  double lambda_opt = 0.0;      // minimizer of the restricted problem
  double rhs = 0.0;             // m_Lambda
  double gap = 0.0;             // |lhs - rhs|
};

CeIdentity ce_identity_check(const ParallelSetProfile& profile, double weight);

/// ((p+1)/p) ||grad u||_p^{p/(p+1)} + ((p-1)/p) Lambda |{u > 0}|, the value
/// of j_p_lambda_radial minimized over lambda for a fixed candidate.
double double_functional_diagnostic(const RadialCandidate& u, double weight);

/// Columns p, lambda_opt, s_opt, energy, m_lambda, relative_gap.
Table convergence_table(const ConvexDomain& ball, double weight, std::span<const double> exponents);

}  // namespace infbern
