#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace infbern::testing {

/// Outcome of one randomized property. A trial fails when its defect, the
/// amount by which the property is violated beyond its tolerance, is positive.
struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_defect = -1e300;
  std::string first_failure;

  bool passed() const { return trials > 0 && failures == 0; }
};

/// Runs `check(rng, trial)` for every trial with an engine seeded once from
/// `seed`. `check` returns the defect and may fill `note` with context.
template <class Check>
PropertyResult for_all(std::string name, std::uint64_t seed, std::size_t trials, Check&& check) {
  PropertyResult res;
  res.name = std::move(name);
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    std::string note;
    const double defect = check(rng, note);
    ++res.trials;
    if (defect > res.worst_defect) res.worst_defect = defect;
    if (!(defect <= 0.0)) {
      if (res.failures == 0) res.first_failure = "trial " + std::to_string(t) + ": " + note;
      ++res.failures;
    }
  }
  return res;
}

/// (1-t) V(a)^(1/n) + t V(b)^(1/n) <= V((1-t)a + t b)^(1/n) on exact erosions
/// of random polygons, rectangles and balls in dimensions 2 to 5.
PropertyResult brunn_minkowski_property(std::uint64_t seed, std::size_t trials);

/// psi(a) <= psi(b) for a < b, on exact erosions and on sampled profiles.
PropertyResult psi_monotone_property(std::uint64_t seed, std::size_t trials);

/// (Omega_a)_b = Omega_(a+b), compared through distance functions, area and
/// perimeter on random polygons.
PropertyResult erosion_semigroup_property(std::uint64_t seed, std::size_t trials);

/// ce_identity_check gap on the unit disk for random weights, tolerance 1e-8.
PropertyResult ce_identity_disk_property(std::uint64_t seed, std::size_t trials);

/// Same on the unit square through the polygon pipeline, tolerance 1e-5.
PropertyResult ce_identity_square_property(std::uint64_t seed, std::size_t trials);

/// p -> J^{p,lambda}(u) is nondecreasing for fixed cone candidates when the
/// weight is at least 1.
PropertyResult p_monotone_property(std::uint64_t seed, std::size_t trials);

/// The four suites required for certification, with their pinned seeds.
std::vector<PropertyResult> core_property_suites();

}  // namespace infbern::testing
