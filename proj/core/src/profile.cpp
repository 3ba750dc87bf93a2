#include "infbern/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "infbern/errors.hpp"

namespace infbern {
namespace {

constexpr double kInvariantTol = 1e-8;

double closed_form_volume(const ConvexDomain& d, double r) {
  if (const auto* b = d.as_ball()) {
    return unit_ball_volume(b->dimension) * std::pow(b->radius - r, b->dimension);
  }
  const auto* q = d.as_rectangle();
  return std::max(0.0, (q->a - 2.0 * r) * (q->b - 2.0 * r));
}

double closed_form_perimeter(const ConvexDomain& d, double r) {
  if (const auto* b = d.as_ball()) {
    const int n = b->dimension;
    return n * unit_ball_volume(n) * std::pow(b->radius - r, n - 1);
  }
  const auto* q = d.as_rectangle();
  return 2.0 * (q->a + q->b - 4.0 * r);
}

// Shape-preserving interior slopes (Fritsch-Butland weighting).
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1);
  std::vector<double> delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  std::vector<double> m(n, 0.0);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] > 0.0) {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      m[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) {
      s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return m;
}

double hermite(double t, double hstep, double y0, double y1, double m0, double m1) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * hstep * m0 +
         (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * hstep * m1;
}

}  // namespace

ParallelSetProfile::ParallelSetProfile(ConvexDomain domain, std::size_t samples)
    : domain_(std::move(domain)),
      mode_(domain_.as_polygon() ? ProfileMode::Sampled : ProfileMode::Analytic) {
  if (samples < 64) throw DomainError("profile needs at least 64 samples");
  const double R = domain_.inradius();
  radii_.resize(samples);
  volumes_.resize(samples);
  perimeters_.resize(samples);
  const auto last = samples - 1;
  for (std::size_t i = 0; i < samples; ++i) {
    // Uniform near 0, clustered towards the inradius.
    radii_[i] = i == last ? R
                          : R * std::sin(0.5 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(last));
  }
  if (mode_ == ProfileMode::Analytic) {
    for (std::size_t i = 0; i < samples; ++i) {
      volumes_[i] = closed_form_volume(domain_, radii_[i]);
      perimeters_[i] = closed_form_perimeter(domain_, radii_[i]);
    }
    volumes_[last] = 0.0;
  } else {
    const auto& poly = *domain_.as_polygon();
    for (std::size_t i = 0; i < last; ++i) {
      const auto pv = polygon_profile_raw(poly, radii_[i]);
      volumes_[i] = pv.volume;
      perimeters_[i] = pv.perimeter;
    }
    volumes_[0] = domain_.volume();
    perimeters_[0] = domain_.boundary_measure();
    volumes_[last] = 0.0;
    // The perimeter is piecewise linear in r; extend the last piece to R.
    const double slope = (perimeters_[last - 1] - perimeters_[last - 2]) /
                         (radii_[last - 1] - radii_[last - 2]);
    perimeters_[last] =
        std::max(0.0, perimeters_[last - 1] + slope * (radii_[last] - radii_[last - 1]));
    perimeter_slopes_ = pchip_slopes(radii_, perimeters_);
  }
}

void ParallelSetProfile::check_radius(double r) const {
  if (!(r >= 0.0) || r > inradius()) {
    throw DomainError("profile radius " + std::to_string(r) + " outside [0, inradius]");
  }
}

std::size_t ParallelSetProfile::segment(double r) const {
  auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
  std::size_t k = it == radii_.begin() ? 0 : static_cast<std::size_t>(it - radii_.begin()) - 1;
  return std::min(k, radii_.size() - 2);
}

double ParallelSetProfile::volume(double r) const {
  check_radius(r);
  if (mode_ == ProfileMode::Analytic) return closed_form_volume(domain_, r);
  const std::size_t k = segment(r);
  const double h = radii_[k + 1] - radii_[k];
  const double t = (r - radii_[k]) / h;
  const double y0 = volumes_[k];
  const double y1 = volumes_[k + 1];
  double m0 = -perimeters_[k];
  double m1 = -perimeters_[k + 1];
  // Fritsch-Carlson limiter keeps the interpolant monotone.
  const double secant = (y1 - y0) / h;
  if (secant < 0.0) {
    const double a = m0 / secant;
    const double b = m1 / secant;
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      m0 = tau * a * secant;
      m1 = tau * b * secant;
    }
  }
  return std::max(0.0, hermite(t, h, y0, y1, m0, m1));
}

double ParallelSetProfile::perimeter(double r) const {
  check_radius(r);
  if (mode_ == ProfileMode::Analytic) return closed_form_perimeter(domain_, r);
  const std::size_t k = segment(r);
  const double h = radii_[k + 1] - radii_[k];
  const double t = (r - radii_[k]) / h;
  return std::max(0.0, hermite(t, h, perimeters_[k], perimeters_[k + 1], perimeter_slopes_[k],
                               perimeter_slopes_[k + 1]));
}

ProfileCertificate certify_profile(const ParallelSetProfile& profile) {
  const auto r = profile.radii();
  const auto v = profile.volumes();
  const auto p = profile.perimeters();
  const double inv_n = 1.0 / profile.dimension();
  const std::size_t n = r.size();
  ProfileCertificate cert;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(v[i + 1] < v[i])) {
      throw GeometryInconsistency("profile volume is not strictly decreasing");
    }
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double g0 = std::pow(v[i - 1], inv_n);
    const double g1 = std::pow(v[i], inv_n);
    const double g2 = std::pow(v[i + 1], inv_n);
    const double w = (r[i] - r[i - 1]) / (r[i + 1] - r[i - 1]);
    cert.max_concavity_defect = std::max(cert.max_concavity_defect, (1.0 - w) * g0 + w * g2 - g1);
  }
  // The last sample has V = 0 and psi = +inf.
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double psi0 = p[i] / v[i];
    const double psi1 = p[i + 1] / v[i + 1];
    cert.max_psi_drop = std::max(cert.max_psi_drop, (psi0 - psi1) / std::max(1.0, psi0));
  }
  return cert;
}

ParallelSetProfile build_profile(const ConvexDomain& domain, std::size_t samples) {
  ParallelSetProfile profile(domain, samples);
  const auto cert = certify_profile(profile);
  if (cert.max_concavity_defect > kInvariantTol) {
    throw GeometryInconsistency("V^(1/n) is not concave along the samples (defect " +
                                std::to_string(cert.max_concavity_defect) + ")");
  }
  if (cert.max_psi_drop > kInvariantTol) {
    throw GeometryInconsistency("psi decreases along the samples (drop " +
                                std::to_string(cert.max_psi_drop) + ")");
  }
  return profile;
}

}  // namespace infbern
