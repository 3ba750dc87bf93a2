#pragma once

#include <cstddef>
#include <string>

#include "infbern/bernoulli.hpp"
#include "infbern/geometry.hpp"
#include "infbern/grid_field.hpp"

namespace infbern {

/// Nodewise cone v_r = [1 - dist(x, dOmega)/r]_+ for 0 < r <= inradius.
GridField cone_solution(const ConvexDomain& domain, double r, double h);

/// Interior ring nodes lying on a segment from the boundary of the core to one
/// of its projections on the outer boundary. Outer boundary nodes, where every
/// field equals 1, are left out.
RegionMask d_hat_mask(const ConvexDomain& domain, double r, double h);

struct PotentialOptions {
  double tol = 1e-8;              // stop when the largest nodal update falls below tol
  std::size_t max_sweeps = 1'000'000;
};

struct PotentialStats {
  std::size_t sweeps = 0;
  double last_update = 0.0;
  std::size_t unknowns = 0;
};

/// Discrete infinity-harmonic function on the ring D_r with value 1 on the
/// outer boundary and 0 on the closed core. Planar domains only
/// (UnsupportedDomain otherwise); SolverDivergence when the sweep cap is hit.
///
/// Scheme: every ring node sees 16 lattice directions; a direction whose
/// segment leaves the ring is cut at the exact crossing and carries the
/// boundary datum there. The node is set to the value that equalizes the
/// steepest ascent and descent slopes over all direction pairs, which for
/// equal arm lengths is the midpoint of the neighbourhood max and min.
/// Gauss-Seidel sweeps alternate their ordering and start from v_r.
GridField infinity_potential(const ConvexDomain& domain, double r, double h,
                             PotentialOptions opts = {}, PotentialStats* stats = nullptr);

/// Comparison of a ring field w against the two distance cones.
struct SandwichReport {
  double lower_violation = 0.0;  // max over ring nodes of (1 - d/r) - w
  double upper_violation = 0.0;  // max over ring nodes of w - dist(x, core)/r
  double d_hat_deviation = 0.0;  // max |w - v_r| over D_hat nodes
  double ring_deviation = 0.0;   // max |w - v_r| over all ring nodes
  double constant = 0.0;         // C = 4/r
  double tolerance = 0.0;        // C * h

  bool certified() const {
    return lower_violation <= tolerance && upper_violation <= tolerance &&
           d_hat_deviation <= tolerance;
  }
};

SandwichReport sandwich_report(const ConvexDomain& domain, double r, const GridField& w);

struct Q1Answer {
  double slope = 0.0;       // lambda = 1/r_Lambda
  double r_lambda = 0.0;
  bool w_equals_v = false;  // r_Lambda <= r_sing
  bool unique = false;      // classify(...) == NonconstantUnique
  std::string description;
};

/// For Lambda >= Lambda_inf: the slope of the infinity-harmonic minimizer.
/// Throws NotApplicable below the threshold.
Q1Answer q1_answer(const BernoulliAnalysis& analysis, double weight);

struct Q2Answer {
  bool exists = false;      // lambda >= 1/r*
  double weight = 0.0;      // Lambda for which w_{1/lambda} minimizes (NaN when !exists)
  bool v_equals_w = false;  // lambda >= max(1/r*, 1/r_sing)
  std::string description;
};

/// For a prescribed slope lambda >= 1/inradius: whether some weight admits
/// w_{1/lambda} as a minimizer. Throws DomainError for lambda < 1/inradius.
Q2Answer q2_answer(const BernoulliAnalysis& analysis, double slope);

}  // namespace infbern
