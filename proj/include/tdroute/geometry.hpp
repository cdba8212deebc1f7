#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tdroute {

// Absolute snapping tolerance for geometric predicates. Coordinates are
// expected at O(1) scale; callers rescale before building graphs if needed.
inline constexpr double kEpsGeom = 1e-12;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt3 = 1.7320508075688772935;

// Thrown when an input is geometrically degenerate (coincident points,
// zero vectors, duplicate sites).
struct DegenerateInput : std::invalid_argument {
  explicit DegenerateInput(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a documented precondition is violated by the caller.
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;
};

using Point = Vec2;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Point a, Point b) { return norm(b - a); }
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}
inline Vec2 perp_ccw(Vec2 v) { return {-v.y, v.x}; }
inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }

// Wraps an angle into [0, 2*pi).
double wrap_angle(double a);

// Cones around a point, for any k >= 2. Cone 0's bisector is the upward
// vertical ray and labels increase counterclockwise; each cone spans
// 2*pi/k of polar angle, half-open with the lower boundary ray included.
// For k = 6, cone 0 covers polar angles [60, 120) degrees.
int cone_index(Point apex, Point q, int k = 6);

// Polar angle of cone i's bisector.
double cone_bisector_angle(int cone, int k = 6);
Vec2 cone_bisector(int cone, int k = 6);

// Polar angles of the clockwise (lower) and counterclockwise (upper)
// boundary rays of a cone.
double cone_ray_angle_cw(int cone, int k = 6);
double cone_ray_angle_ccw(int cone, int k = 6);

// True when q lies in the closed cone `cone` of apex, within an angular
// tolerance of eps radians at the boundary.
bool cone_contains_closed(Point apex, Point q, int cone, int k = 6, double eps = kEpsGeom);

// Length of the projection of (q - apex) onto the cone bisector.
// Requires q in the closed cone; throws ContractViolation otherwise.
double bisector_projection(Point apex, Point q, int cone, int k = 6);

// The triangle with apex p bounded by the sides of one of p's cones and by
// the line through q perpendicular to the cone bisector. All such triangles
// of one cone are homothets of each other.
struct CanonicalTriangle {
  Point apex;
  int cone = 0;
  int k = 6;
  double depth = 0.0;  // bisector projection of the defining point

  // Far-side corners, on the clockwise and counterclockwise cone rays.
  Point corner_cw() const;
  Point corner_ccw() const;

  // closed = true counts the boundary (within eps) as inside,
  // closed = false requires clearance of at least eps from the boundary.
  bool contains(Point w, bool closed, double eps = kEpsGeom) const;
};

// Builds the canonical triangle of q with respect to p. The cone is
// determined by cone_index(p, q, k). Throws DegenerateInput when p == q.
CanonicalTriangle canonical_triangle(Point p, Point q, int k = 6);

enum class Side { positive, on, negative };

// A line through `anchor` parallel to one of the six cone boundary
// directions (dir6 * 60 degrees). The positive side is fixed per slope
// class: below for horizontal lines, above for slopes +sqrt(3) and
// -sqrt(3). That is the side on which the even cones touch the line.
struct OrientedConeLine {
  Point anchor;
  int dir6 = 0;  // 0..5, direction angle = dir6 * 60 degrees

  Vec2 direction() const { return unit_from_angle(dir6 * kPi / 3.0); }
  // Unit normal pointing into the positive side.
  Vec2 positive_normal() const;
  // Signed offset of w from the line; positive on the positive side.
  double offset(Point w) const { return dot(positive_normal(), w - anchor); }
};

Side side_of_line(const OrientedConeLine& line, Point w, double eps = kEpsGeom);

// Angle swept clockwise from `from` to `to`, in [0, 2*pi).
// Throws DegenerateInput on zero vectors.
double clockwise_angle(Vec2 from, Vec2 to);

// Strictly increasing in the counterclockwise angle from direction (1, 0),
// with range [0, 4). Cheaper than atan2 when only the order matters.
// Requires a nonzero vector.
inline double pseudo_angle(Vec2 d) {
  const double s = std::abs(d.x) + std::abs(d.y);
  const double p = d.x / s;
  return d.y >= 0.0 ? 1.0 - p : 3.0 + p;
}

}  // namespace tdroute
