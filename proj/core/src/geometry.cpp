#include "infbern/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "infbern/errors.hpp"

namespace infbern {
namespace {

constexpr double kDegeneracyTol = 1e-12;

double signed_area(const std::vector<Vec2>& v) {
  if (v.size() < 3) return 0.0;
  // Relative to the first vertex to limit cancellation on tiny polygons.
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    twice += cross(v[i] - v[0], v[i + 1] - v[0]);
  }
  return 0.5 * twice;
}

double outline_length(const std::vector<Vec2>& v) {
  if (v.size() < 2) return 0.0;
  double len = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    len += norm(v[(i + 1) % v.size()] - v[i]);
  }
  return len;
}

double max_pairwise_distance(const std::vector<Vec2>& v) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, norm(v[i] - v[j]));
  }
  return d;
}

// Drops vertices that sit on a (numerically) too short edge or make a
// (numerically) flat turn. Repeats until stable.
void collapse_degenerate(std::vector<Vec2>& v, double scale) {
  const double len_tol = kDegeneracyTol * scale;
  const double cross_tol = kDegeneracyTol * scale * scale;
  bool changed = true;
  while (changed && v.size() >= 2) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::size_t n = v.size();
      const Vec2 prev = v[(i + n - 1) % n];
      const Vec2 cur = v[i];
      const Vec2 next = v[(i + 1) % n];
      const bool short_edge = norm(next - cur) < len_tol;
      const bool flat = n >= 3 && std::abs(cross(cur - prev, next - cur)) < cross_tol;
      if (short_edge || flat) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
}

// Sutherland-Hodgman against a single half-plane {slack >= shift}.
std::vector<Vec2> clip(const std::vector<Vec2>& poly, const HalfPlane& hp, double shift) {
  std::vector<Vec2> out;
  out.reserve(poly.size() + 1);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double sp = hp.slack(p) - shift;
    const double sq = hp.slack(q) - shift;
    if (sp >= 0.0) out.push_back(p);
    if ((sp >= 0.0) != (sq >= 0.0)) {
      const double t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

std::vector<Vec2> erode_outline(const ConvexPolygon& poly, double r) {
  std::vector<Vec2> cur = poly.vertices();
  for (const auto& hp : poly.halfplanes()) {
    cur = clip(cur, hp, r);
    if (cur.empty()) break;
  }
  return cur;
}

double polygon_inradius(const ConvexPolygon& poly) {
  double lo = 0.0;
  double hi = 0.5 * poly.diameter();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (signed_area(erode_outline(poly, mid)) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= kDegeneracyTol * 1e-3 * hi) break;
  }
  return lo;
}

std::array<double, 2> planar(const ConvexDomain& domain, std::span<const double> point) {
  if (point.size() != 2) {
    throw DomainError("expected a planar point, got dimension " + std::to_string(point.size()));
  }
  (void)domain;
  return {point[0], point[1]};
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double unit_ball_volume(int n) {
  if (n < 1) throw DomainError("dimension must be positive");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// ---------------------------------------------------------------------------
// ConvexPolygon

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) {
  for (const auto& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw InvalidDomain("polygon vertex is not finite");
    }
  }
  if (vertices.size() < 3) throw InvalidDomain("polygon needs at least 3 vertices");
  scale_ = max_pairwise_distance(vertices);
  if (!(scale_ > 0.0)) throw InvalidDomain("polygon vertices coincide");
  if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  collapse_degenerate(vertices, scale_);
  if (vertices.size() < 3) throw InvalidDomain("polygon is degenerate after cleanup");

  const double cross_tol = kDegeneracyTol * scale_ * scale_;
  double turning = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = vertices[i] - vertices[(i + n - 1) % n];
    const Vec2 e1 = vertices[(i + 1) % n] - vertices[i];
    if (cross(e0, e1) <= cross_tol) throw InvalidDomain("polygon is not strictly convex");
    turning += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw InvalidDomain("polygon boundary is not simple");
  }
  vertices_ = std::move(vertices);
  build_halfplanes();
}

ConvexPolygon ConvexPolygon::from_clean(std::vector<Vec2> vertices, double scale) {
  ConvexPolygon p;
  p.scale_ = scale;
  collapse_degenerate(vertices, scale);
  p.vertices_ = std::move(vertices);
  p.build_halfplanes();
  return p;
}

void ConvexPolygon::build_halfplanes() {
  halfplanes_.clear();
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 e = vertices_[(i + 1) % n] - a;
    const double len = norm(e);
    if (len == 0.0) continue;
    const Vec2 normal{e.y / len, -e.x / len};
    halfplanes_.push_back({normal, dot(normal, a)});
  }
}

double ConvexPolygon::area() const { return signed_area(vertices_); }
double ConvexPolygon::perimeter() const { return outline_length(vertices_); }
double ConvexPolygon::diameter() const { return max_pairwise_distance(vertices_); }

// ---------------------------------------------------------------------------
// ConvexDomain

ConvexDomain::ConvexDomain(Shape shape, double inradius)
    : shape_(std::move(shape)), inradius_(inradius) {
  std::visit(
      [this](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const double k = unit_ball_volume(s.dimension);
          volume_ = k * std::pow(s.radius, s.dimension);
          boundary_measure_ = s.dimension * k * std::pow(s.radius, s.dimension - 1);
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          volume_ = s.a * s.b;
          boundary_measure_ = 2.0 * (s.a + s.b);
        } else {
          volume_ = s.area();
          boundary_measure_ = s.perimeter();
        }
      },
      shape_);
}

ConvexDomain ConvexDomain::ball(int dimension, double radius) {
  if (dimension < 2) throw InvalidDomain("ball dimension must be >= 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidDomain("ball radius must be > 0");
  return ConvexDomain(Ball{dimension, radius}, radius);
}

ConvexDomain ConvexDomain::rectangle(double a, double b, Vec2 origin) {
  if (!(b > 0.0) || !std::isfinite(a)) throw InvalidDomain("rectangle sides must be > 0");
  if (a < b) throw InvalidDomain("rectangle expects a >= b");
  return ConvexDomain(Rectangle{a, b, origin}, 0.5 * b);
}

ConvexDomain ConvexDomain::polygon(std::vector<Vec2> vertices) {
  return polygon(ConvexPolygon(std::move(vertices)));
}

ConvexDomain ConvexDomain::polygon(ConvexPolygon polygon) {
  const double r = polygon_inradius(polygon);
  if (!(r > 0.0)) throw InvalidDomain("polygon has empty interior");
  return ConvexDomain(std::move(polygon), r);
}

int ConvexDomain::dimension() const {
  if (const auto* b = as_ball()) return b->dimension;
  return 2;
}

std::array<double, 4> ConvexDomain::bounding_box() const {
  if (const auto* b = as_ball()) {
    if (b->dimension != 2) throw UnsupportedDomain("bounding box requires a planar domain");
    return {-b->radius, -b->radius, b->radius, b->radius};
  }
  if (const auto* r = as_rectangle()) {
    return {r->origin.x, r->origin.y, r->origin.x + r->a, r->origin.y + r->b};
  }
  const auto& v = as_polygon()->vertices();
  std::array<double, 4> box{v[0].x, v[0].y, v[0].x, v[0].y};
  for (const auto& p : v) {
    box[0] = std::min(box[0], p.x);
    box[1] = std::min(box[1], p.y);
    box[2] = std::max(box[2], p.x);
    box[3] = std::max(box[3], p.y);
  }
  return box;
}

// ---------------------------------------------------------------------------
// Operations

ConvexDomain inner_parallel_body(const ConvexDomain& domain, double r) {
  if (!(r >= 0.0)) throw DomainError("erosion radius must be >= 0");
  if (r >= domain.inradius()) throw EmptyInterior("erosion radius reaches the inradius");
  if (r == 0.0) return domain;
  if (const auto* b = domain.as_ball()) return ConvexDomain::ball(b->dimension, b->radius - r);
  if (const auto* q = domain.as_rectangle()) {
    return ConvexDomain::rectangle(q->a - 2.0 * r, q->b - 2.0 * r, q->origin + Vec2{r, r});
  }
  const auto& poly = *domain.as_polygon();
  auto eroded = ConvexPolygon::from_clean(erode_outline(poly, r), poly.scale());
  if (eroded.size() < 3 || !(eroded.area() > 0.0)) {
    throw EmptyInterior("erosion collapsed the polygon");
  }
  // Erosion by balls is a semigroup, so the inradius shrinks by exactly r.
  return ConvexDomain(std::move(eroded), domain.inradius() - r);
}

ProfileValue polygon_profile_raw(const ConvexPolygon& polygon, double r) {
  const auto outline = erode_outline(polygon, r);
  if (outline.size() < 2) return {0.0, 0.0};
  return {std::max(0.0, signed_area(outline)), outline_length(outline)};
}

ProfileValue profile_at(const ConvexDomain& domain, double r) {
  if (!(r >= 0.0)) throw DomainError("erosion radius must be >= 0");
  if (r >= domain.inradius()) throw EmptyInterior("erosion radius reaches the inradius");
  if (const auto* b = domain.as_ball()) {
    const double k = unit_ball_volume(b->dimension);
    const double s = b->radius - r;
    return {k * std::pow(s, b->dimension), b->dimension * k * std::pow(s, b->dimension - 1)};
  }
  if (const auto* q = domain.as_rectangle()) {
    return {(q->a - 2.0 * r) * (q->b - 2.0 * r), 2.0 * (q->a + q->b - 4.0 * r)};
  }
  return polygon_profile_raw(*domain.as_polygon(), r);
}

double distance_to_boundary(const ConvexDomain& domain, std::span<const double> point) {
  if (const auto* b = domain.as_ball()) {
    if (point.size() != static_cast<std::size_t>(b->dimension)) {
      throw DomainError("point dimension does not match the ball");
    }
    double s = 0.0;
    for (double c : point) s += c * c;
    return std::max(0.0, b->radius - std::sqrt(s));
  }
  const auto p = planar(domain, point);
  return distance_to_boundary(domain, Vec2{p[0], p[1]});
}

double distance_to_boundary(const ConvexDomain& domain, Vec2 p) {
  if (const auto* b = domain.as_ball()) {
    if (b->dimension != 2) throw DomainError("planar point given for a non-planar ball");
    return std::max(0.0, b->radius - norm(p));
  }
  if (const auto* q = domain.as_rectangle()) {
    const Vec2 l = p - q->origin;
    return std::max(0.0, std::min({l.x, q->a - l.x, l.y, q->b - l.y}));
  }
  double d = std::numeric_limits<double>::infinity();
  for (const auto& hp : domain.as_polygon()->halfplanes()) d = std::min(d, hp.slack(p));
  return std::max(0.0, d);
}

double distance_to_closure(const ConvexDomain& domain, Vec2 p) {
  if (const auto* b = domain.as_ball()) {
    if (b->dimension != 2) throw DomainError("planar point given for a non-planar ball");
    return std::max(0.0, norm(p) - b->radius);
  }
  if (const auto* q = domain.as_rectangle()) {
    const Vec2 l = p - q->origin;
    const double dx = std::max({-l.x, 0.0, l.x - q->a});
    const double dy = std::max({-l.y, 0.0, l.y - q->b});
    return std::hypot(dx, dy);
  }
  const auto& poly = *domain.as_polygon();
  bool inside = true;
  for (const auto& hp : poly.halfplanes()) inside = inside && hp.slack(p) >= 0.0;
  if (inside) return 0.0;
  const auto& v = poly.vertices();
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i];
    const Vec2 e = v[(i + 1) % v.size()] - a;
    const double t = std::clamp(dot(p - a, e) / dot(e, e), 0.0, 1.0);
    d = std::min(d, norm(p - (a + t * e)));
  }
  return d;
}

std::optional<Chord> line_chord(const ConvexDomain& domain, Vec2 o, Vec2 d) {
  if (const auto* b = domain.as_ball()) {
    if (b->dimension != 2) throw UnsupportedDomain("line chord requires a planar domain");
    const double a2 = dot(d, d);
    const double b1 = dot(o, d);
    const double c = dot(o, o) - b->radius * b->radius;
    const double disc = b1 * b1 - a2 * c;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    // Stable root pair.
    const double qv = -(b1 + std::copysign(sq, b1));
    double t0 = qv / a2;
    double t1 = qv != 0.0 ? c / qv : -t0;
    if (t0 > t1) std::swap(t0, t1);
    return Chord{t0, t1};
  }
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  auto apply = [&](Vec2 normal, double offset) {
    const double nd = dot(normal, d);
    const double s = offset - dot(normal, o);
    if (nd > 0.0) {
      hi = std::min(hi, s / nd);
    } else if (nd < 0.0) {
      lo = std::max(lo, s / nd);
    } else if (s < 0.0) {
      lo = std::numeric_limits<double>::infinity();
    }
  };
  if (const auto* q = domain.as_rectangle()) {
    apply({1, 0}, q->origin.x + q->a);
    apply({-1, 0}, -q->origin.x);
    apply({0, 1}, q->origin.y + q->b);
    apply({0, -1}, -q->origin.y);
  } else {
    for (const auto& hp : domain.as_polygon()->halfplanes()) apply(hp.normal, hp.offset);
  }
  if (lo > hi) return std::nullopt;
  return Chord{lo, hi};
}

double singular_radius(const ConvexDomain& domain) {
  // Cut-locus branches reach the boundary at every polygon vertex.
  if (const auto* b = domain.as_ball()) return b->radius;
  return 0.0;
}

ConvexDomain equal_volume_ball(const ConvexDomain& domain) {
  const int n = domain.dimension();
  return ConvexDomain::ball(n, std::pow(domain.volume() / unit_ball_volume(n), 1.0 / n));
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

ConvexDomain regular_polygon(int k, double inradius) {
  if (k < 3) throw InvalidDomain("regular polygon needs k >= 3");
  const double circum = inradius / std::cos(std::numbers::pi / k);
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double t = 2.0 * std::numbers::pi * j / k;
    v.push_back({circum * std::cos(t), circum * std::sin(t)});
  }
  return ConvexDomain::polygon(std::move(v));
}

}  // namespace infbern
