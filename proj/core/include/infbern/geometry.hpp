#pragma once

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace infbern {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Open ball of radius `radius` centred at the origin of R^dimension.
struct Ball {
  int dimension = 2;
  double radius = 1.0;
};

/// Axis-aligned rectangle origin + (0,a) x (0,b) with a >= b.
struct Rectangle {
  double a = 1.0;
  double b = 1.0;
  Vec2 origin{};
};

/// Supporting line of a polygon edge: {x : normal . x <= offset}, |normal| = 1.
struct HalfPlane {
  Vec2 normal;
  double offset = 0.0;

  double slack(Vec2 p) const { return offset - dot(normal, p); }
};

/// Strictly convex polygon with counterclockwise vertices.
class ConvexPolygon {
 public:
  /// Cleans up near-duplicate and collinear vertices, reorients clockwise input
  /// and validates strict convexity. Throws InvalidDomain.
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  /// Adopts already-cleaned vertices; `scale` sets the degeneracy tolerance.
  static ConvexPolygon from_clean(std::vector<Vec2> vertices, double scale);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<HalfPlane>& halfplanes() const { return halfplanes_; }

  /// Length scale used for degeneracy tolerances (diameter of the progenitor).
  double scale() const { return scale_; }
  double area() const;
  double perimeter() const;
  double diameter() const;

 private:
  ConvexPolygon() = default;
  void build_halfplanes();

  std::vector<Vec2> vertices_;
  std::vector<HalfPlane> halfplanes_;
  double scale_ = 1.0;
};

/// Convex body: n-ball, axis-aligned rectangle or convex polygon.
class ConvexDomain {
 public:
  using Shape = std::variant<Ball, Rectangle, ConvexPolygon>;

  static ConvexDomain ball(int dimension, double radius);
  static ConvexDomain rectangle(double a, double b, Vec2 origin = {});
  static ConvexDomain polygon(std::vector<Vec2> vertices);
  static ConvexDomain polygon(ConvexPolygon polygon);

  const Shape& shape() const { return shape_; }
  const Ball* as_ball() const { return std::get_if<Ball>(&shape_); }
  const Rectangle* as_rectangle() const { return std::get_if<Rectangle>(&shape_); }
  const ConvexPolygon* as_polygon() const { return std::get_if<ConvexPolygon>(&shape_); }
  bool is_planar() const { return dimension() == 2; }

  int dimension() const;
  double inradius() const { return inradius_; }
  double volume() const { return volume_; }
  double boundary_measure() const { return boundary_measure_; }

  /// Axis-aligned bounding box of a planar domain: {x0, y0, x1, y1}.
  std::array<double, 4> bounding_box() const;

 private:
  ConvexDomain(Shape shape, double inradius);
  friend ConvexDomain inner_parallel_body(const ConvexDomain& domain, double r);

  Shape shape_;
  double inradius_ = 0.0;
  double volume_ = 0.0;
  double boundary_measure_ = 0.0;
};

struct ProfileValue {
  double volume = 0.0;
  double perimeter = 0.0;
};

/// The inner parallel set {x in domain : dist(x, boundary) > r}.
/// Throws DomainError for r < 0 and EmptyInterior for r >= inradius.
ConvexDomain inner_parallel_body(const ConvexDomain& domain, double r);

/// Volume and boundary measure of the inner parallel set at r in [0, inradius).
ProfileValue profile_at(const ConvexDomain& domain, double r);

/// Same as profile_at for polygons but tolerant of the degenerate limit r ~ inradius.
ProfileValue polygon_profile_raw(const ConvexPolygon& polygon, double r);

/// Distance to the boundary; 0 for boundary and exterior points.
double distance_to_boundary(const ConvexDomain& domain, std::span<const double> point);
double distance_to_boundary(const ConvexDomain& domain, Vec2 point);

/// Distance from a planar point to the closed domain (0 inside).
double distance_to_closure(const ConvexDomain& domain, Vec2 point);

/// Parameter interval [enter, exit] of the line origin + t*direction inside the
/// closed planar domain, or nothing if the line misses it.
struct Chord {
  double enter = 0.0;
  double exit = 0.0;
};
std::optional<Chord> line_chord(const ConvexDomain& domain, Vec2 origin, Vec2 direction);

/// Distance of the cut locus from the boundary.
double singular_radius(const ConvexDomain& domain);

/// Ball of the same dimension and volume, centred at the origin.
ConvexDomain equal_volume_ball(const ConvexDomain& domain);

/// Convex hull (counterclockwise, no collinear points) by the monotone chain.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Regular k-gon with the given inradius, centred at the origin.
ConvexDomain regular_polygon(int k, double inradius);

}  // namespace infbern
