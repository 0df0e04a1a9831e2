#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace droplet {

using Vec2 = Eigen::Vector2d;

constexpr double kPi = 3.14159265358979323846;

// z-component of the 2D cross product.
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Rotate by -90 degrees: for a CCW-oriented boundary tangent this is the outward normal
// direction, scaled by the tangent length.
inline Vec2 perp(const Vec2& v) { return Vec2(v.y(), -v.x()); }

// Signed area of triangle (a, b, c); positive for CCW.
inline double tri_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross2(b - a, c - a);
}

// Shoelace area of a closed polygon given by its vertices in order.
inline double polygon_area(const std::vector<Vec2>& pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += cross2(pts[i], pts[(i + 1) % n]);
  return 0.5 * s;
}

// Winding-number point-in-polygon test (robust for simple polygons; boundary points
// are classified by the crossing rule, which is adequate for centroid queries).
inline bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  int winding = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && cross2(b - a, p - a) > 0.0) ++winding;
    } else {
      if (b.y() <= p.y() && cross2(b - a, p - a) < 0.0) --winding;
    }
  }
  return winding != 0;
}

// Distance from point p to segment [a, b].
inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  double t = (p - a).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13, int max_depth = 48);

}  // namespace droplet
