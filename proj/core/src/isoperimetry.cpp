#include "infbern/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "infbern/bernoulli.hpp"
#include "infbern/domain_io.hpp"
#include "infbern/errors.hpp"

namespace infbern {
namespace {

constexpr double kGapTol = 1e-6;
constexpr double kMarginTol = 1e-8;
constexpr double kBallDeficit = 1e-6;

// Raw engine output mapped to [0, 1); std distributions are not portable bit for bit.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vec2 draw_in_disk(std::mt19937_64& rng) {
  for (;;) {
    const Vec2 p{2.0 * unit_draw(rng) - 1.0, 2.0 * unit_draw(rng) - 1.0};
    if (dot(p, p) < 1.0) return p;
  }
}

}  // namespace

double isoperimetric_deficit(const ConvexDomain& domain) {
  const int n = domain.dimension();
  const double k = unit_ball_volume(n);
  return std::pow(domain.boundary_measure(), n) /
             (std::pow(n, n) * k * std::pow(domain.volume(), n - 1)) -
         1.0;
}

double ball_lambda_infinity(int n, double radius) {
  return std::pow(n + 1.0, n + 1) /
         (unit_ball_volume(n) * std::pow(n, n) * std::pow(radius, n + 1));
}

double phi_bound(const ParallelSetProfile& profile, double r) {
  const int n = profile.dimension();
  const double omega = profile.total_volume();
  const double shrink = 1.0 - r * profile.total_perimeter() / (n * omega);
  return r * omega * std::pow(shrink, n);
}

double phi_bound_check(const ParallelSetProfile& profile) {
  const auto r = profile.radii();
  const auto v = profile.volumes();
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.size(); ++i) {
    margin = std::min(margin, phi_bound(profile, r[i]) - r[i] * v[i]);
  }
  if (margin < -kMarginTol) {
    throw GeometryInconsistency("r|Omega_r| exceeds its concavity bound (margin " +
                                std::to_string(margin) + ")");
  }
  return margin;
}

IsoperimetricRecord compare_with_ball(const ConvexDomain& domain, std::size_t samples) {
  const auto profile = build_profile(domain, samples);
  IsoperimetricRecord rec;
  rec.descriptor = domain_to_json(domain);
  if (const auto* p = domain.as_polygon()) rec.n_vertices = p->size();
  if (domain.as_rectangle()) rec.n_vertices = 4;
  rec.area = domain.volume();
  rec.perimeter = domain.boundary_measure();
  if (const auto* b = domain.as_ball()) {
    rec.lambda_inf = ball_lambda_infinity(b->dimension, b->radius);
  } else {
    rec.lambda_inf = lambda_infinity(profile);
  }
  const auto star = equal_volume_ball(domain);
  rec.lambda_inf_ball = ball_lambda_infinity(star.dimension(), star.inradius());
  rec.gap = rec.lambda_inf - rec.lambda_inf_ball;
  rec.phi_margin = phi_bound_check(profile);
  rec.deficit = isoperimetric_deficit(domain);
  rec.numerically_ball = rec.deficit < kBallDeficit;
  return rec;
}

ConvexDomain random_convex_polygon(std::mt19937_64& rng, std::size_t vertices) {
  if (vertices < 3) throw DomainError("polygon needs at least 3 vertices");
  std::vector<Vec2> points;
  std::vector<Vec2> hull;
  // One new point raises the hull size by at most one, so the loop stops at
  // exactly `vertices` corners.
  while (hull.size() < vertices) {
    points.push_back(draw_in_disk(rng));
    if (points.size() >= 3) hull = convex_hull(points);
  }
  return ConvexDomain::polygon(hull);
}

std::vector<IsoperimetricRecord> batch_isoperimetric(std::uint64_t seed, std::size_t count,
                                                     BatchOptions opts) {
  if (count < 1) throw DomainError("batch needs at least one shape");
  std::mt19937_64 rng(seed);
  std::vector<IsoperimetricRecord> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t k = 6 + static_cast<std::size_t>(rng() % 19);
    std::optional<ConvexDomain> domain;
    try {
      domain = random_convex_polygon(rng, k);
    } catch (const InvalidDomain&) {
      continue;  // numerically flat corner; draw again
    }
    out.push_back(compare_with_ball(*domain, opts.samples));
    if (opts.enforce && out.back().gap < -kGapTol) {
      throw GeometryInconsistency("isoperimetric gap " + std::to_string(out.back().gap) +
                                  " below tolerance for " + out.back().descriptor);
    }
  }
  return out;
}

Table batch_table(const std::vector<IsoperimetricRecord>& records) {
  Table t{{"id", "n_vertices", "area", "perimeter", "lambda_inf", "lambda_inf_ball", "gap",
           "deficit"},
          {}};
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    t.add_row({static_cast<double>(i), static_cast<double>(r.n_vertices), r.area, r.perimeter,
               r.lambda_inf, r.lambda_inf_ball, r.gap, r.deficit});
  }
  return t;
}

}  // namespace infbern
