#include "infbern/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "infbern/errors.hpp"

namespace infbern {
namespace {

void require_planar(const ConvexDomain& domain) {
  if (!domain.is_planar()) throw UnsupportedDomain("grid fields need a planar domain");
}

std::vector<HalfPlane> supporting_lines(const ConvexDomain& domain) {
  if (const auto* q = domain.as_rectangle()) {
    return {{{1, 0}, q->origin.x + q->a},
            {{-1, 0}, -q->origin.x},
            {{0, 1}, q->origin.y + q->b},
            {{0, -1}, -q->origin.y}};
  }
  return domain.as_polygon()->halfplanes();
}

GridField labelled_field(const ConvexDomain& domain, double r, double h) {
  GridField f;
  f.grid = GridGeometry::covering(domain.bounding_box(), h);
  f.labels = label_nodes(domain, r, f.grid);
  f.values.assign(f.grid.size(), std::numeric_limits<double>::quiet_NaN());
  return f;
}

}  // namespace

GridField cone_solution(const ConvexDomain& domain, double r, double h) {
  require_planar(domain);
  if (!(r > 0.0)) throw DomainError("cone radius must be > 0");
  if (r > domain.inradius()) throw DomainError("cone radius exceeds the inradius");
  GridField f = labelled_field(domain, r, h);
  for (std::size_t j = 0; j < f.grid.ny; ++j) {
    for (std::size_t i = 0; i < f.grid.nx; ++i) {
      const std::size_t k = f.grid.index(i, j);
      switch (f.labels[k]) {
        case NodeLabel::Exterior: break;
        case NodeLabel::OuterBoundary: f.values[k] = 1.0; break;
        case NodeLabel::Core: f.values[k] = 0.0; break;
        case NodeLabel::Interior:
          f.values[k] =
              std::max(0.0, 1.0 - distance_to_boundary(domain, f.grid.node(i, j)) / r);
          break;
      }
    }
  }
  return f;
}

RegionMask d_hat_mask(const ConvexDomain& domain, double r, double h) {
  require_planar(domain);
  if (!(r > 0.0) || r >= domain.inradius()) throw DomainError("need 0 < r < inradius");
  RegionMask mask;
  mask.grid = GridGeometry::covering(domain.bounding_box(), h);
  const auto labels = label_nodes(domain, r, mask.grid);
  mask.member.assign(mask.grid.size(), 0);
  const bool ball = domain.as_ball() != nullptr;
  const auto lines = ball ? std::vector<HalfPlane>{} : supporting_lines(domain);
  const auto box = domain.bounding_box();
  const double eps = 1e-12 * std::max(box[2] - box[0], box[3] - box[1]);
  for (std::size_t j = 0; j < mask.grid.ny; ++j) {
    for (std::size_t i = 0; i < mask.grid.nx; ++i) {
      const std::size_t k = mask.grid.index(i, j);
      if (labels[k] != NodeLabel::Interior) continue;
      if (ball) {
        mask.member[k] = 1;
        continue;
      }
      // x lies on a projection segment iff the point at depth r along the
      // inward normal through its foot still has depth r.
      const Vec2 x = mask.grid.node(i, j);
      const double d = distance_to_boundary(domain, x);
      for (const auto& hp : lines) {
        const double s = hp.slack(x);
        if (s > d + eps) continue;
        const Vec2 foot = x + s * hp.normal;
        const Vec2 tip = foot - r * hp.normal;
        if (distance_to_boundary(domain, tip) >= r - eps) {
          mask.member[k] = 1;
          break;
        }
      }
    }
  }
  return mask;
}

SandwichReport sandwich_report(const ConvexDomain& domain, double r, const GridField& w) {
  require_planar(domain);
  if (!(r > 0.0) || r >= domain.inradius()) throw DomainError("need 0 < r < inradius");
  const auto core = inner_parallel_body(domain, r);
  const auto mask = d_hat_mask(domain, r, w.grid.h);
  if (mask.grid.size() != w.grid.size()) throw DomainError("field grid does not match the domain");
  SandwichReport rep;
  rep.constant = 4.0 / r;
  rep.tolerance = rep.constant * w.grid.h;
  for (std::size_t j = 0; j < w.grid.ny; ++j) {
    for (std::size_t i = 0; i < w.grid.nx; ++i) {
      if (w.label(i, j) != NodeLabel::Interior) continue;
      const Vec2 x = w.grid.node(i, j);
      const double u = w.value(i, j);
      const double cone = 1.0 - distance_to_boundary(domain, x) / r;
      const double upper = distance_to_closure(core, x) / r;
      rep.lower_violation = std::max(rep.lower_violation, cone - u);
      rep.upper_violation = std::max(rep.upper_violation, u - upper);
      const double dev = std::abs(u - cone);
      rep.ring_deviation = std::max(rep.ring_deviation, dev);
      if (mask.contains(i, j)) rep.d_hat_deviation = std::max(rep.d_hat_deviation, dev);
    }
  }
  return rep;
}

Q1Answer q1_answer(const BernoulliAnalysis& analysis, double weight) {
  const auto cls = classify(analysis, weight);
  if (cls.tag == SolutionClass::OnlyConstant) {
    throw NotApplicable("weight below lambda_inf: only the constant minimizer exists");
  }
  Q1Answer a;
  a.r_lambda = *cls.r_lambda;
  a.slope = 1.0 / a.r_lambda;
  a.w_equals_v = a.r_lambda <= analysis.r_sing;
  a.unique = cls.tag == SolutionClass::NonconstantUnique;
  std::ostringstream os;
  os << "the infinity-harmonic potential w_r with r = r_Lambda solves the supremal problem with "
        "slope 1/r_Lambda; "
     << (a.w_equals_v ? "it coincides with the cone v_r" : "it differs from the cone v_r");
  a.description = os.str();
  return a;
}

Q2Answer q2_answer(const BernoulliAnalysis& analysis, double slope) {
  const auto& p = *analysis.profile;
  const double R = p.inradius();
  // Relative slack absorbs rounding in inradii and r* computed from polygons.
  constexpr double kSlack = 1e-12;
  if (!(slope >= (1.0 - kSlack) / R)) {
    throw DomainError("slope below 1/inradius admits no non-trivial solution");
  }
  const double threshold = 1.0 / analysis.r_star;
  Q2Answer a;
  a.exists = slope >= threshold * (1.0 - kSlack);
  const double sing_threshold = analysis.r_sing > 0.0
                                    ? 1.0 / analysis.r_sing
                                    : std::numeric_limits<double>::infinity();
  a.v_equals_w = a.exists && slope >= std::max(threshold, sing_threshold) * (1.0 - kSlack);
  if (a.exists) {
    // Slope 1/rho matches the weight at which rho is the smaller root of f'.
    const double rho = std::min(1.0 / slope, analysis.r_star);
    a.weight = 1.0 / (rho * rho * p.perimeter(rho));
    a.description = "w_r with r = 1/lambda minimizes the Bernoulli energy for the listed weight";
  } else {
    a.weight = std::numeric_limits<double>::quiet_NaN();
    a.description = "slope below 1/r_star: no weight makes w_{1/lambda} a minimizer";
  }
  return a;
}

}  // namespace infbern
