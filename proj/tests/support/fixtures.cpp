#include "fixtures.hpp"

#include <cmath>
#include <numbers>

#include "infbern/errors.hpp"

namespace infbern::testing {

ConvexDomain random_polygon(std::mt19937_64& rng, int min_vertices, int max_vertices) {
  for (;;) {
    const int k = min_vertices + static_cast<int>(rng() % static_cast<unsigned>(max_vertices - min_vertices + 1));
    const double stretch = uniform(rng, 0.3, 1.0);
    const double tilt = uniform(rng, 0.0, std::numbers::pi);
    std::vector<Vec2> pts;
    for (int i = 0; i < k; ++i) {
      const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      const double rad = uniform(rng, 0.7, 1.0);
      const Vec2 e{rad * std::cos(t), stretch * rad * std::sin(t)};
      pts.push_back({std::cos(tilt) * e.x - std::sin(tilt) * e.y, std::sin(tilt) * e.x + std::cos(tilt) * e.y});
    }
    auto hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    try {
      return ConvexDomain::polygon(hull);
    } catch (const InvalidDomain&) {
      // Nearly collinear draw; try again.
    }
  }
}

}  // namespace infbern::testing
