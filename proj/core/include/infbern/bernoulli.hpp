#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "infbern/profile.hpp"

namespace infbern {

/// Relative bisection tolerance; defaults to 1e-12 for closed-form profiles
/// and 1e-8 for sampled ones.
using RootTolerance = std::optional<double>;

double default_root_tolerance(const ParallelSetProfile& profile);

/// f(r) = J(v_r) - J(1) = 1/r - weight * |Omega_r|.
double f_lambda(const ParallelSetProfile& profile, double weight, double r);
/// f'(r) = -1/r^2 + weight * |d Omega_r|.
double f_lambda_derivative(const ParallelSetProfile& profile, double weight, double r);

/// Unique root of psi(r) = 1/r in (0, inradius), cross-checked against the
/// sampled argmax of r |Omega_r|. Throws ProfileResolutionError when the
/// sample grid does not bracket it.
double find_r_star(const ParallelSetProfile& profile, RootTolerance tol = {});

/// 1 / (r* |Omega_{r*}|).
double lambda_infinity(const ParallelSetProfile& profile, RootTolerance tol = {});

/// Smallest weight at which f' acquires a (double) root.
double lambda_prime(const ParallelSetProfile& profile, RootTolerance tol = {});

/// Smallest root of 1/r^2 = weight |d Omega_r|. Throws NoRootError below lambda'.
double find_r_lambda(const ParallelSetProfile& profile, double weight, RootTolerance tol = {});

/// Largest root of 1/r^2 = weight |d Omega_r|, or the inradius when f' stays
/// positive up to it. Throws NoRootError below lambda'.
double find_rho_lambda(const ParallelSetProfile& profile, double weight, RootTolerance tol = {});

/// min over (0, inradius] of f.
double mu_lambda(const ParallelSetProfile& profile, double weight, RootTolerance tol = {});

/// Minimum of J(u) = Lip(u) + weight |{u > 0}|.
double m_lambda(const ParallelSetProfile& profile, double weight, RootTolerance tol = {});

struct BernoulliAnalysis {
  std::shared_ptr<const ParallelSetProfile> profile;
  double r_star = 0.0;
  double lambda_star = 0.0;  // equals the variational constant Lambda_infinity
  double lambda_prime = 0.0;
  double r_sing = 0.0;
  double phi_max = 0.0;  // r* |Omega_{r*}|
  double root_tolerance = 1e-12;
};

BernoulliAnalysis analyze(std::shared_ptr<const ParallelSetProfile> profile, RootTolerance tol = {});

double m_lambda(const BernoulliAnalysis& analysis, double weight);

enum class SolutionClass {
  OnlyConstant,
  ConstantAndNonconstant,
  NonconstantUnique,
  NonconstantMultiple,
};

std::string_view to_string(SolutionClass c);

struct SolutionClassification {
  SolutionClass tag = SolutionClass::OnlyConstant;
  std::optional<double> r_lambda;
  double m_lambda = 0.0;
};

/// Classifies the minimizers for a given weight. Uniqueness above Lambda_inf
/// is decided by r_lambda <= r_sing.
SolutionClassification classify(const BernoulliAnalysis& analysis, double weight);

}  // namespace infbern
