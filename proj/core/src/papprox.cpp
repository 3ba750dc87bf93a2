#include "infbern/papprox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "infbern/bernoulli.hpp"
#include "infbern/errors.hpp"
#include "infbern/numerics.hpp"

namespace infbern {
namespace {

constexpr double kMaxExponent = 320.0;
constexpr std::size_t kPanels = 16;
constexpr std::size_t kPanelOrder = 32;  // 15 x 32 = 480 nodes plus the exact tail
constexpr std::size_t kCoreScan = 1024;
constexpr std::size_t kSlopeScan = 256;

const Ball& require_ball(const ConvexDomain& domain) {
  const auto* b = domain.as_ball();
  if (!b) throw UnsupportedDomain("p-approximation supported on balls only");
  return *b;
}

void check_exponent(int n, double p) {
  if (!(p > n)) throw DomainError("p-approximation needs p > n");
  if (p > kMaxExponent) throw DomainError("p above the supported ceiling of 320");
}

// Composite rule on [tail, 1] with panels [q^15, q^14], ..., [q, 1] refining
// geometrically towards 0, where the core radius sits. The leftover [0, tail]
// is integrated in closed form by the caller.
struct GradedRule {
  std::vector<double> t;
  std::vector<double> log_w;
  double tail = 1.0;

  GradedRule() {
    const auto base = numerics::gauss_legendre(kPanelOrder);
    const double q = std::pow(10.0, -12.0 / static_cast<double>(kPanels - 1));
    double hi = 1.0;
    for (std::size_t k = 0; k + 1 < kPanels; ++k) {
      const double lo = hi * q;
      const double half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < kPanelOrder; ++i) {
        t.push_back(lo + half * (base.nodes[i] + 1.0));
        log_w.push_back(std::log(half * base.weights[i]));
      }
      hi = lo;
    }
    tail = hi;
  }
};

const GradedRule& graded_rule() {
  static const GradedRule rule;
  return rule;
}

double candidate_measure(const RadialCandidate& u, double weight) {
  return (u.p - 1.0) / u.p * weight * u.positive_volume();
}

EnergyReport assemble(double log_integral, double p, double slope, double measure) {
  EnergyReport e;
  e.log_gradient = log_integral - std::log(p) - p * std::log(slope);
  e.gradient = std::isinf(e.log_gradient) && e.log_gradient < 0 ? 0.0 : std::exp(e.log_gradient);
  e.multiplier = slope;
  e.measure = measure;
  e.total = e.gradient + e.multiplier + e.measure;
  if (std::isnan(e.total)) throw QuadratureError("energy evaluation produced NaN");
  return e;
}

// Caches log int |grad u_s|^p on the uniform core-radius grid so that slope
// sweeps only pay for the golden-section refinements.
class PHarmonicFamily {
 public:
  PHarmonicFamily(const ConvexDomain& ball, double p) : ball_(ball), p_(p) {
    const auto& b = require_ball(ball);
    check_exponent(b.dimension, p);
    R_ = b.radius;
    grid_.resize(kCoreScan);
    log_a_.resize(kCoreScan);
    for (std::size_t i = 0; i < kCoreScan; ++i) {
      grid_[i] = R_ * static_cast<double>(i) / static_cast<double>(kCoreScan);
      log_a_[i] = log_gradient_integral(RadialCandidate::p_harmonic(ball, grid_[i], p));
    }
  }

  RadialMinimum minimize(double slope, double weight) const {
    auto energy = [&](double s, double log_a) {
      return assemble(log_a, p_, slope,
                      candidate_measure(RadialCandidate::p_harmonic(ball_, s, p_), weight));
    };
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < kCoreScan; ++i) {
      const double v = energy(grid_[i], log_a_[i]).total;
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    const double lo = grid_[arg == 0 ? 0 : arg - 1];
    const double hi = arg + 1 < kCoreScan ? grid_[arg + 1] : R_ * (1.0 - 1e-12);
    auto f = [&](double s) {
      const auto u = RadialCandidate::p_harmonic(ball_, s, p_);
      return energy(s, log_gradient_integral(u)).total;
    };
    auto refined = numerics::golden_minimize(f, lo, hi, 1e-10 * R_);
    double s_opt = grid_[arg];
    if (refined.value < best) s_opt = refined.arg;

    RadialMinimum out;
    out.s_opt = s_opt;
    out.energy = energy(s_opt, log_gradient_integral(RadialCandidate::p_harmonic(ball_, s_opt, p_)));
    out.branch = CandidateKind::PHarmonic;
    const auto one = RadialCandidate::constant(ball_, p_);
    const auto flat = assemble(-std::numeric_limits<double>::infinity(), p_, slope,
                               candidate_measure(one, weight));
    if (flat.total <= out.energy.total) {
      out.energy = flat;
      out.s_opt = 0.0;
      out.branch = CandidateKind::Constant;
    }
    return out;
  }

 private:
  const ConvexDomain& ball_;
  double p_;
  double R_ = 1.0;
  std::vector<double> grid_;
  std::vector<double> log_a_;
};

void check_energy_args(double slope, double weight) {
  if (!(slope > 0.0) || !std::isfinite(slope)) throw DomainError("slope must be > 0");
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw DomainError("weight must be >= 0");
}

}  // namespace

RadialCandidate RadialCandidate::p_harmonic(const ConvexDomain& ball, double s, double p) {
  const auto& b = require_ball(ball);
  check_exponent(b.dimension, p);
  if (!(s >= 0.0) || !(s < b.radius)) throw DomainError("core radius must lie in [0, R)");
  return {b.dimension, b.radius, s, p, CandidateKind::PHarmonic};
}

RadialCandidate RadialCandidate::cone(const ConvexDomain& ball, double s, double p) {
  auto u = p_harmonic(ball, s, p);
  u.kind = CandidateKind::Cone;
  return u;
}

RadialCandidate RadialCandidate::constant(const ConvexDomain& ball, double p) {
  const auto& b = require_ball(ball);
  check_exponent(b.dimension, p);
  return {b.dimension, b.radius, 0.0, p, CandidateKind::Constant};
}

double RadialCandidate::exponent() const {
  return kind == CandidateKind::Cone ? 1.0 : (p - n) / (p - 1.0);
}

double RadialCandidate::value(double rho) const {
  if (kind == CandidateKind::Constant) return 1.0;
  if (rho <= s) return 0.0;
  const double a = exponent();
  return (std::pow(rho, a) - std::pow(s, a)) / (std::pow(R, a) - std::pow(s, a));
}

double RadialCandidate::gradient(double rho) const {
  if (kind == CandidateKind::Constant || rho <= s) return 0.0;
  const double a = exponent();
  return a * std::pow(rho, a - 1.0) / (std::pow(R, a) - std::pow(s, a));
}

double RadialCandidate::positive_volume() const {
  const double k = unit_ball_volume(n);
  if (kind == CandidateKind::Constant) return k * std::pow(R, n);
  return k * (std::pow(R, n) - std::pow(s, n));
}

double log_gradient_integral(const RadialCandidate& u) {
  if (u.kind == CandidateKind::Constant) return -std::numeric_limits<double>::infinity();
  const auto& rule = graded_rule();
  const double a = u.exponent();
  // log(R^a - s^a) without cancellation when s is close to R.
  const double log_span = u.s > 0.0 ? a * std::log(u.R) + std::log(-std::expm1(a * std::log(u.s / u.R)))
                                    : a * std::log(u.R);
  const double log_sphere = std::log(u.n * unit_ball_volume(u.n));
  const double width = u.R - u.s;
  // |u'|^p rho^(n-1) = (a / span)^p rho^(p(a-1) + n - 1)
  const double power = u.p * (a - 1.0) + (u.n - 1.0);
  const double prefactor = log_sphere + u.p * (std::log(a) - log_span) + std::log(width);
  std::vector<double> terms(rule.t.size() + 1);
  for (std::size_t i = 0; i < rule.t.size(); ++i) {
    const double rho = u.s + width * rule.t[i];
    terms[i] = rule.log_w[i] + power * std::log(rho);
  }
  // Exact integral of rho^power over [s, s + tail * width]; power + 1 > 0, and
  // the endpoint singularity at rho = 0 (s = 0, p near n) defeats Gauss-Legendre.
  const double e = power + 1.0;
  const double top = u.s + width * rule.tail;
  const double log_tail = u.s > 0.0 ? e * std::log(top) + std::log(-std::expm1(e * std::log(u.s / top)))
                                    : e * std::log(top);
  terms.back() = log_tail - std::log(e) - std::log(width);
  const double out = prefactor + numerics::log_sum_exp(terms);
  if (std::isnan(out)) throw QuadratureError("gradient quadrature produced NaN");
  return out;
}

EnergyReport j_p_lambda_radial(const RadialCandidate& u, double slope, double weight) {
  check_energy_args(slope, weight);
  return assemble(log_gradient_integral(u), u.p, slope, candidate_measure(u, weight));
}

RadialMinimum radial_p_minimum(const ConvexDomain& ball, double p, double slope, double weight) {
  check_energy_args(slope, weight);
  return PHarmonicFamily(ball, p).minimize(slope, weight);
}

DoubleInfimum double_infimum(const ConvexDomain& ball, double p, double weight) {
  const auto& b = require_ball(ball);
  check_exponent(b.dimension, p);
  check_energy_args(1.0, weight);
  const ParallelSetProfile profile(ball, 1024);
  const double lambda_inf = lambda_infinity(profile);
  if (weight < lambda_inf * (1.0 - 1e-12)) {
    throw HypothesisViolation("double infimum needs Lambda >= lambda_inf");
  }
  const double r = weight <= lambda_inf ? find_r_star(profile) : find_r_lambda(profile, weight);
  const double ring = profile.total_volume() - profile.volume(r);

  DoubleInfimum out;
  out.lambda_lo = 1.0 / b.radius;
  out.lambda_hi = profile.total_volume() + 1.0 / r + weight * ring;
  const PHarmonicFamily family(ball, p);
  auto f = [&](double slope) { return family.minimize(slope, weight).energy.total; };
  const auto best =
      numerics::scan_then_golden_minimize(f, out.lambda_lo, out.lambda_hi, kSlopeScan, 1e-9);
  out.lambda_opt = best.arg;
  out.inner = family.minimize(best.arg, weight);
  out.energy = out.inner.energy.total;
  return out;
}

double j_lambda_limit(const ParallelSetProfile& profile, double slope, double weight) {
  if (!(slope >= 0.0)) throw DomainError("slope must be >= 0");
  const double R = profile.inradius();
  if (slope * R < 1.0) return slope + weight * profile.total_volume();
  return slope + weight * (profile.total_volume() - profile.volume(1.0 / slope));
}

CeIdentity ce_identity_check(const ParallelSetProfile& profile, double weight) {
  if (!(weight > 0.0)) throw DomainError("weight must be > 0");
  const double R = profile.inradius();
  const double omega = profile.total_volume();
  const double lambda_inf = lambda_infinity(profile);
  // Above the threshold the bracket comes from the minimizer; below it any
  // slope past 1/R + Lambda|Omega| already costs more than lambda = 1/R.
  double hi = 1.0 / R + weight * omega;
  if (weight >= lambda_inf) {
    const double r = find_r_lambda(profile, weight);
    hi = omega + 1.0 / r + weight * (omega - profile.volume(r));
  }
  auto f = [&](double slope) { return j_lambda_limit(profile, slope, weight); };
  const auto best = numerics::scan_then_golden_minimize(f, 1.0 / R, hi, 4096, 1e-12 * hi);
  CeIdentity out;
  out.lambda_opt = best.arg;
  out.lhs_restricted = best.value;
  // Below 1/R the limit functional is increasing, so its infimum there is the
  // value approached as lambda -> 0.
  out.lhs = std::min(best.value, weight * omega);
  out.rhs = m_lambda(profile, weight);
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

double double_functional_diagnostic(const RadialCandidate& u, double weight) {
  if (!(weight >= 0.0)) throw DomainError("weight must be >= 0");
  const double log_a = log_gradient_integral(u);
  const double grad = std::isinf(log_a) ? 0.0 : std::exp(log_a / (u.p + 1.0));
  return (u.p + 1.0) / u.p * grad + candidate_measure(u, weight);
}

Table convergence_table(const ConvexDomain& ball, double weight,
                        std::span<const double> exponents) {
  require_ball(ball);
  const ParallelSetProfile profile(ball, 1024);
  const double m = m_lambda(profile, weight);
  Table t{{"p", "lambda_opt", "s_opt", "energy", "m_lambda", "relative_gap"}, {}};
  for (double p : exponents) {
    const auto d = double_infimum(ball, p, weight);
    t.add_row({p, d.lambda_opt, d.inner.s_opt, d.energy, m, std::abs(d.energy - m) / m});
  }
  return t;
}

}  // namespace infbern
