#pragma once

#include <memory>
#include <random>
#include <vector>

#include "infbern/bernoulli.hpp"
#include "infbern/geometry.hpp"
#include "infbern/profile.hpp"

namespace infbern::testing {

inline ConvexDomain unit_disk() { return ConvexDomain::ball(2, 1.0); }

/// Unit square given as a polygon so that the sampled pipeline is exercised.
inline ConvexDomain unit_square_polygon() {
  return ConvexDomain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline ConvexDomain rectangle_polygon(double a, double b) {
  return ConvexDomain::polygon({{0, 0}, {a, 0}, {a, b}, {0, b}});
}

inline BernoulliAnalysis analysis_of(const ConvexDomain& d, std::size_t samples = 1024) {
  return analyze(std::make_shared<const ParallelSetProfile>(build_profile(d, samples)));
}

/// Uniform double in [lo, hi) from raw engine bits, identical on every platform.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random convex polygon around the origin: sorted random angles on an
/// ellipse-like radius profile, then the convex hull.
ConvexDomain random_polygon(std::mt19937_64& rng, int min_vertices, int max_vertices);

}  // namespace infbern::testing
