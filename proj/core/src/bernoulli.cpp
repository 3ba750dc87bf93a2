#include "infbern/bernoulli.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infbern/errors.hpp"
#include "infbern/numerics.hpp"

namespace infbern {
namespace {

constexpr std::size_t kSlopeGrid = 4096;
constexpr int kSlopeRefinements = 2;
constexpr double kWeightEqualityTol = 1e-10;

double resolve(const ParallelSetProfile& p, RootTolerance tol) {
  return tol.value_or(default_root_tolerance(p));
}

void require_positive_weight(double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) throw DomainError("weight must be > 0");
}

// The landscape of f' = -1/r^2 + weight P(r) is concave in r, so its maximum
// separates the two roots r_lambda <= rho_lambda.
numerics::Extremum slope_peak(const ParallelSetProfile& p, double weight) {
  const double R = p.inradius();
  return numerics::grid_maximize(
      [&](double r) { return -1.0 / (r * r) + weight * p.perimeter(r); }, 1e-6 * R, R,
      kSlopeGrid, kSlopeRefinements);
}

// Peak values within rounding of zero count as a double root.
bool touches_zero(const numerics::Extremum& peak) {
  return peak.value >= -1e-10 / (peak.arg * peak.arg);
}

}  // namespace

double default_root_tolerance(const ParallelSetProfile& profile) {
  return profile.mode() == ProfileMode::Analytic ? 1e-12 : 1e-8;
}

double f_lambda(const ParallelSetProfile& profile, double weight, double r) {
  if (!(r > 0.0)) throw DomainError("f_lambda needs r > 0");
  if (weight < 0.0) throw DomainError("weight must be >= 0");
  return 1.0 / r - weight * profile.volume(r);
}

double f_lambda_derivative(const ParallelSetProfile& profile, double weight, double r) {
  if (!(r > 0.0)) throw DomainError("f_lambda needs r > 0");
  if (weight < 0.0) throw DomainError("weight must be >= 0");
  return -1.0 / (r * r) + weight * profile.perimeter(r);
}

double find_r_star(const ParallelSetProfile& profile, RootTolerance tol) {
  // psi(r) - 1/r has the sign of r P(r) - V(r) wherever V > 0.
  auto excess = [&](double r) { return r * profile.perimeter(r) - profile.volume(r); };
  const auto radii = profile.radii();
  const auto vols = profile.volumes();
  const std::size_t last = radii.size() - 1;
  std::size_t hi = 0;
  for (std::size_t i = 1; i < last; ++i) {
    if (radii[i] * profile.perimeters()[i] - vols[i] > 0.0) {
      hi = i;
      break;
    }
  }
  if (hi == 0) throw ProfileResolutionError("no sign change of psi(r) - 1/r on the sample grid");
  const double r_star =
      numerics::bisect(excess, radii[hi - 1], radii[hi], {resolve(profile, tol), 200});

  // Cross-check: r* must sit next to the sampled argmax of phi(r) = r V(r)
  // and dominate it.
  std::size_t arg = 0;
  for (std::size_t i = 1; i <= last; ++i) {
    if (radii[i] * vols[i] > radii[arg] * vols[arg]) arg = i;
  }
  const double lo = radii[arg == 0 ? 0 : arg - 1];
  const double up = radii[std::min(arg + 1, last)];
  const double phi_star = r_star * profile.volume(r_star);
  if (r_star < lo || r_star > up || phi_star < radii[arg] * vols[arg] * (1.0 - 1e-8)) {
    throw GeometryInconsistency("root of psi(r) = 1/r disagrees with the argmax of r|Omega_r|");
  }
  return r_star;
}

double lambda_infinity(const ParallelSetProfile& profile, RootTolerance tol) {
  const double r = find_r_star(profile, tol);
  return 1.0 / (r * profile.volume(r));
}

double lambda_prime(const ParallelSetProfile& profile, RootTolerance tol) {
  const double upper = lambda_infinity(profile, tol);
  auto sign = [&](double weight) { return slope_peak(profile, weight).value; };
  return numerics::bisect(sign, 0.0, upper, {std::min(resolve(profile, tol), 1e-12), 200});
}

double find_r_lambda(const ParallelSetProfile& profile, double weight, RootTolerance tol) {
  require_positive_weight(weight);
  const auto peak = slope_peak(profile, weight);
  if (peak.value < 0.0) {
    if (touches_zero(peak)) return peak.arg;
    throw NoRootError("weight below lambda': 1/r^2 = weight |d Omega_r| has no root");
  }
  auto g = [&](double r) { return -1.0 / (r * r) + weight * profile.perimeter(r); };
  double lo = 1e-6 * profile.inradius();
  while (g(lo) >= 0.0 && lo > 1e-300) lo *= 1e-3;
  return numerics::bisect(g, lo, peak.arg, {resolve(profile, tol), 200});
}

double find_rho_lambda(const ParallelSetProfile& profile, double weight, RootTolerance tol) {
  require_positive_weight(weight);
  const auto peak = slope_peak(profile, weight);
  if (peak.value < 0.0) {
    if (touches_zero(peak)) return peak.arg;
    throw NoRootError("weight below lambda': 1/r^2 = weight |d Omega_r| has no root");
  }
  const double R = profile.inradius();
  auto g = [&](double r) { return -1.0 / (r * r) + weight * profile.perimeter(r); };
  // Inner parallel sets that collapse onto a segment keep P(R) > 0, and f'
  // can stay positive up to the inradius.
  if (g(R) >= 0.0) return R;
  return numerics::bisect(g, peak.arg, R, {resolve(profile, tol), 200});
}

double mu_lambda(const ParallelSetProfile& profile, double weight, RootTolerance tol) {
  require_positive_weight(weight);
  const double R = profile.inradius();
  const double at_inradius = f_lambda(profile, weight, R);
  try {
    const double r = find_r_lambda(profile, weight, tol);
    return std::min(at_inradius, f_lambda(profile, weight, r));
  } catch (const NoRootError&) {
    return at_inradius;
  }
}

double m_lambda(const ParallelSetProfile& profile, double weight, RootTolerance tol) {
  require_positive_weight(weight);
  const double lambda_star = lambda_infinity(profile, tol);
  if (weight <= lambda_star) return weight * profile.total_volume();
  const double r = find_r_lambda(profile, weight, tol);
  return 1.0 / r + weight * (profile.total_volume() - profile.volume(r));
}

BernoulliAnalysis analyze(std::shared_ptr<const ParallelSetProfile> profile, RootTolerance tol) {
  if (!profile) throw DomainError("analysis needs a profile");
  BernoulliAnalysis a;
  a.root_tolerance = resolve(*profile, tol);
  a.r_star = find_r_star(*profile, a.root_tolerance);
  a.phi_max = a.r_star * profile->volume(a.r_star);
  a.lambda_star = 1.0 / a.phi_max;
  a.lambda_prime = lambda_prime(*profile, a.root_tolerance);
  a.r_sing = singular_radius(profile->domain());
  a.profile = std::move(profile);
  return a;
}

double m_lambda(const BernoulliAnalysis& analysis, double weight) {
  require_positive_weight(weight);
  const auto& p = *analysis.profile;
  if (weight <= analysis.lambda_star) return weight * p.total_volume();
  const double r = find_r_lambda(p, weight, analysis.root_tolerance);
  return 1.0 / r + weight * (p.total_volume() - p.volume(r));
}

std::string_view to_string(SolutionClass c) {
  switch (c) {
    case SolutionClass::OnlyConstant: return "OnlyConstant";
    case SolutionClass::ConstantAndNonconstant: return "ConstantAndNonconstant";
    case SolutionClass::NonconstantUnique: return "NonconstantUnique";
    case SolutionClass::NonconstantMultiple: return "NonconstantMultiple";
  }
  return "?";
}

SolutionClassification classify(const BernoulliAnalysis& analysis, double weight) {
  require_positive_weight(weight);
  SolutionClassification out;
  const double ls = analysis.lambda_star;
  if (std::abs(weight - ls) <= kWeightEqualityTol * ls) {
    out.tag = SolutionClass::ConstantAndNonconstant;
    out.r_lambda = analysis.r_star;
    out.m_lambda = ls * analysis.profile->total_volume();
    return out;
  }
  out.m_lambda = m_lambda(analysis, weight);
  if (weight < ls) {
    out.tag = SolutionClass::OnlyConstant;
    return out;
  }
  const double r = find_r_lambda(*analysis.profile, weight, analysis.root_tolerance);
  out.r_lambda = r;
  out.tag = r <= analysis.r_sing ? SolutionClass::NonconstantUnique
                                 : SolutionClass::NonconstantMultiple;
  return out;
}

}  // namespace infbern
