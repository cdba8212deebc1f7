#include "tdroute/geometry.hpp"

namespace tdroute {

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a = 0.0;
  return a;
}

int cone_index(Point apex, Point q, int k) {
  if (k < 2) throw ContractViolation("cone_index: k must be at least 2");
  const Vec2 d = q - apex;
  if (d.x == 0.0 && d.y == 0.0) throw DegenerateInput("cone_index: coincident points");
  const double width = 2.0 * kPi / k;
  // Shift so that cone 0's lower ray maps to angle zero.
  const double a = wrap_angle(std::atan2(d.y, d.x) - kPi / 2.0 + width / 2.0);
  int i = static_cast<int>(std::floor(a / width));
  if (i >= k) i = k - 1;
  // A point within the angular tolerance of the next cone's lower ray is
  // snapped into that cone; the lower ray belongs to the cone it opens.
  if (width - (a - i * width) <= kEpsGeom) i += 1;
  return i % k;
}

double cone_bisector_angle(int cone, int k) {
  return wrap_angle(kPi / 2.0 + cone * 2.0 * kPi / k);
}

Vec2 cone_bisector(int cone, int k) { return unit_from_angle(cone_bisector_angle(cone, k)); }

double cone_ray_angle_cw(int cone, int k) {
  return wrap_angle(cone_bisector_angle(cone, k) - kPi / k);
}

double cone_ray_angle_ccw(int cone, int k) {
  return wrap_angle(cone_bisector_angle(cone, k) + kPi / k);
}

bool cone_contains_closed(Point apex, Point q, int cone, int k, double eps) {
  const Vec2 d = q - apex;
  if (d.x == 0.0 && d.y == 0.0) return false;
  double off = wrap_angle(std::atan2(d.y, d.x) - cone_bisector_angle(cone, k));
  if (off > kPi) off -= 2.0 * kPi;
  return std::abs(off) <= kPi / k + eps;
}

double bisector_projection(Point apex, Point q, int cone, int k) {
  if (cone < 0 || cone >= k) throw ContractViolation("bisector_projection: cone out of range");
  if (!cone_contains_closed(apex, q, cone, k)) {
    throw ContractViolation("bisector_projection: point outside the closed cone");
  }
  return dot(q - apex, cone_bisector(cone, k));
}

Point CanonicalTriangle::corner_cw() const {
  const double half = kPi / k;
  return apex + unit_from_angle(cone_bisector_angle(cone, k) - half) * (depth / std::cos(half));
}

Point CanonicalTriangle::corner_ccw() const {
  const double half = kPi / k;
  return apex + unit_from_angle(cone_bisector_angle(cone, k) + half) * (depth / std::cos(half));
}

bool CanonicalTriangle::contains(Point w, bool closed, double eps) const {
  const Vec2 d = w - apex;
  const Vec2 bis = cone_bisector(cone, k);
  const Vec2 lo = unit_from_angle(cone_ray_angle_cw(cone, k));
  const Vec2 hi = unit_from_angle(cone_ray_angle_ccw(cone, k));
  // Signed clearances from the three bounding lines, positive inside.
  const double s_lo = cross(lo, d);
  const double s_hi = -cross(hi, d);
  const double s_far = depth - dot(bis, d);
  const double m = std::min(std::min(s_lo, s_hi), s_far);
  return closed ? m >= -eps : m > eps;
}

CanonicalTriangle canonical_triangle(Point p, Point q, int k) {
  const int c = cone_index(p, q, k);
  CanonicalTriangle t;
  t.apex = p;
  t.cone = c;
  t.k = k;
  t.depth = dot(q - p, cone_bisector(c, k));
  return t;
}

Vec2 OrientedConeLine::positive_normal() const {
  const Vec2 d = direction();
  // Horizontal lines: positive side below. Slopes +/-sqrt(3): positive above.
  if (std::abs(d.y) <= 0.5) return Vec2{0.0, -1.0};
  const Vec2 n = perp_ccw(d);
  return n.y > 0.0 ? n : -n;
}

Side side_of_line(const OrientedConeLine& line, Point w, double eps) {
  const double h = line.offset(w);
  if (h > eps) return Side::positive;
  if (h < -eps) return Side::negative;
  return Side::on;
}

double clockwise_angle(Vec2 from, Vec2 to) {
  if ((from.x == 0.0 && from.y == 0.0) || (to.x == 0.0 && to.y == 0.0)) {
    throw DegenerateInput("clockwise_angle: zero direction");
  }
  const double ccw = std::atan2(cross(from, to), dot(from, to));
  return wrap_angle(-ccw);
}

}  // namespace tdroute
