#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "infbern/csv.hpp"
#include "infbern/geometry.hpp"
#include "infbern/profile.hpp"

namespace infbern {

struct IsoperimetricRecord {
  std::string descriptor;       // JSON description of the domain
  std::size_t n_vertices = 0;   // 0 for balls
  double area = 0.0;
  double perimeter = 0.0;
  double lambda_inf = 0.0;       // of the domain
  double lambda_inf_ball = 0.0;  // of the ball with the same volume
  double gap = 0.0;              // lambda_inf - lambda_inf_ball
  double phi_margin = 0.0;       // phi_bound_check of the profile
  double deficit = 0.0;          // isoperimetric_deficit
  bool numerically_ball = false;  // deficit < 1e-6
};

/// |dOmega|^n / (n^n kappa_n |Omega|^(n-1)) - 1, zero exactly for balls.
double isoperimetric_deficit(const ConvexDomain& domain);

/// lambda_inf of Ball(n, R) in closed form: (n+1)^(n+1) / (kappa_n n^n R^(n+1)).
double ball_lambda_infinity(int n, double radius);

/// r |Omega| (1 - r |dOmega| / (n |Omega|))^n, the concavity bound on r V(r).
double phi_bound(const ParallelSetProfile& profile, double r);

/// min over samples of phi_bound(r) - r V(r); GeometryInconsistency below -1e-8.
double phi_bound_check(const ParallelSetProfile& profile);

IsoperimetricRecord compare_with_ball(const ConvexDomain& domain, std::size_t samples = 1024);

/// Random convex polygon: hull of points drawn uniformly in the unit disk,
/// grown one point at a time until the hull has `vertices` corners.
ConvexDomain random_convex_polygon(std::mt19937_64& rng, std::size_t vertices);

struct BatchOptions {
  std::size_t samples = 1024;
  bool enforce = true;  // throw GeometryInconsistency when a gap < -1e-6
};

/// `count` polygons with 6 to 24 vertices, deterministic from `seed`.
std::vector<IsoperimetricRecord> batch_isoperimetric(std::uint64_t seed, std::size_t count,
                                                     BatchOptions opts = {});

/// Columns id, n_vertices, area, perimeter, lambda_inf, lambda_inf_ball, gap, deficit.
Table batch_table(const std::vector<IsoperimetricRecord>& records);

}  // namespace infbern
