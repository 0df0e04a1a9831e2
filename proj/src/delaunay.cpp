// Constrained Delaunay triangulation of a simple polygon with interior points:
// incremental Bowyer-Watson with a super-triangle, constraint-edge recovery by
// flips, outside-triangle removal by winding test, Laplacian smoothing.
#include "droplet/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "droplet/errors.hpp"

namespace droplet {

namespace {

struct Tri {
  int v[3];
  bool alive = true;
};

// > 0 when p lies strictly inside the circumcircle of CCW triangle (a, b, c).
double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  const double ax = a.x() - p.x(), ay = a.y() - p.y();
  const double bx = b.x() - p.x(), by = b.y() - p.y();
  const double cx = c.x() - p.x(), cy = c.y() - p.y();
  const double a2 = ax * ax + ay * ay;
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

bool ccw(const Vec2& a, const Vec2& b, const Vec2& c) { return tri_area(a, b, c) > 0.0; }

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross2(p2 - p1, q1 - p1);
  const double d2 = cross2(p2 - p1, q2 - p1);
  const double d3 = cross2(q2 - q1, p1 - q1);
  const double d4 = cross2(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

class Triangulator {
 public:
  Triangulator(std::vector<Vec2> pts, const std::vector<std::pair<int, int>>& segments)
      : pts_(std::move(pts)), segments_(segments) {}

  std::vector<std::array<int, 3>> run() {
    add_super_triangle();
    for (int i = 0; i < n_input_; ++i) insert_point(i);
    recover_segments();
    return collect_inside();
  }

 private:
  void add_super_triangle() {
    n_input_ = static_cast<int>(pts_.size());
    Vec2 lo = pts_[0], hi = pts_[0];
    for (const Vec2& p : pts_) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const Vec2 c = 0.5 * (lo + hi);
    const double d = std::max((hi - lo).maxCoeff(), 1e-12) * 64.0;
    pts_.push_back(c + Vec2(-d, -d));
    pts_.push_back(c + Vec2(d, -d));
    pts_.push_back(c + Vec2(0, d));
    tris_.push_back({{n_input_, n_input_ + 1, n_input_ + 2}, true});
  }

  void insert_point(int ip) {
    const Vec2& p = pts_[ip];
    // Cavity: all live triangles whose circumcircle contains p.
    std::vector<int> cavity;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive) continue;
      const Tri& T = tris_[t];
      if (incircle(pts_[T.v[0]], pts_[T.v[1]], pts_[T.v[2]], p) > 0) cavity.push_back(t);
    }
    if (cavity.empty()) throw GeometryError("triangulation: point outside all circumcircles");
    // Cavity boundary = edges used by exactly one cavity triangle.
    std::map<std::pair<int, int>, int> edge_count;
    for (int t : cavity) {
      const Tri& T = tris_[t];
      for (int e = 0; e < 3; ++e) {
        int a = T.v[e], b = T.v[(e + 1) % 3];
        auto key = std::minmax(a, b);
        edge_count[{key.first, key.second}]++;
      }
    }
    for (int t : cavity) tris_[t].alive = false;
    for (int t : cavity) {
      const Tri T = tris_[t];  // by value: the push_backs below may reallocate tris_
      for (int e = 0; e < 3; ++e) {
        int a = T.v[e], b = T.v[(e + 1) % 3];
        auto key = std::minmax(a, b);
        if (edge_count[{key.first, key.second}] != 1) continue;
        // Keep the cavity triangle's orientation for the fan triangle.
        if (ccw(pts_[a], pts_[b], p))
          tris_.push_back({{a, b, ip}, true});
        else
          tris_.push_back({{b, a, ip}, true});
      }
    }
  }

  bool has_edge(int a, int b) const {
    for (const Tri& T : tris_) {
      if (!T.alive) continue;
      for (int e = 0; e < 3; ++e) {
        const int u = T.v[e], v = T.v[(e + 1) % 3];
        if ((u == a && v == b) || (u == b && v == a)) return true;
      }
    }
    return false;
  }

  // Flip the shared edge of the two triangles adjacent to (a, b); returns false
  // when the surrounding quad is not strictly convex.
  bool flip_edge(int a, int b) {
    int t1 = -1, t2 = -1;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive) continue;
      const Tri& T = tris_[t];
      for (int e = 0; e < 3; ++e) {
        const int u = T.v[e], v = T.v[(e + 1) % 3];
        if ((u == a && v == b) || (u == b && v == a)) {
          (t1 < 0 ? t1 : t2) = t;
          break;
        }
      }
    }
    if (t1 < 0 || t2 < 0) return false;
    auto opposite = [&](int t) {
      for (int e = 0; e < 3; ++e) {
        const int w = tris_[t].v[e];
        if (w != a && w != b) return w;
      }
      return -1;
    };
    const int c = opposite(t1), d = opposite(t2);
    // Flippable iff the quad (a, c, b, d) is strictly convex.
    if (!segments_cross(pts_[a], pts_[b], pts_[c], pts_[d])) return false;
    tris_[t1].alive = false;
    tris_[t2].alive = false;
    if (ccw(pts_[c], pts_[d], pts_[a]))
      tris_.push_back({{c, d, a}, true});
    else
      tris_.push_back({{d, c, a}, true});
    if (ccw(pts_[c], pts_[d], pts_[b]))
      tris_.push_back({{c, d, b}, true});
    else
      tris_.push_back({{d, c, b}, true});
    return true;
  }

  void recover_segments() {
    for (const auto& [a, b] : segments_) {
      int guard = 0;
      while (!has_edge(a, b)) {
        if (++guard > 1000)
          throw GeometryError("triangulation: failed to recover boundary segment");
        // Flip any live edge crossing segment (a, b).
        bool flipped = false;
        for (int t = 0; t < static_cast<int>(tris_.size()) && !flipped; ++t) {
          if (!tris_[t].alive) continue;
          for (int e = 0; e < 3; ++e) {
            const int u = tris_[t].v[e], v = tris_[t].v[(e + 1) % 3];
            if (u == a || u == b || v == a || v == b) continue;
            if (!segments_cross(pts_[a], pts_[b], pts_[u], pts_[v])) continue;
            if (flip_edge(u, v)) {
              flipped = true;
              break;
            }
          }
        }
        if (!flipped) throw GeometryError("triangulation: no flippable crossing edge");
      }
    }
  }

  std::vector<std::array<int, 3>> collect_inside() {
    std::vector<Vec2> poly;
    for (const auto& [a, b] : segments_) {
      (void)b;
      poly.push_back(pts_[a]);
    }
    std::vector<std::array<int, 3>> out;
    for (const Tri& T : tris_) {
      if (!T.alive) continue;
      if (T.v[0] >= n_input_ || T.v[1] >= n_input_ || T.v[2] >= n_input_) continue;
      // Degenerate triangles from exactly collinear boundary runs carry no area.
      if (std::abs(tri_area(pts_[T.v[0]], pts_[T.v[1]], pts_[T.v[2]])) < 1e-14) continue;
      const Vec2 c = (pts_[T.v[0]] + pts_[T.v[1]] + pts_[T.v[2]]) / 3.0;
      if (!point_in_polygon(c, poly)) continue;
      std::array<int, 3> tri{T.v[0], T.v[1], T.v[2]};
      if (!ccw(pts_[tri[0]], pts_[tri[1]], pts_[tri[2]])) std::swap(tri[1], tri[2]);
      out.push_back(tri);
    }
    return out;
  }

  std::vector<Vec2> pts_;
  const std::vector<std::pair<int, int>>& segments_;
  std::vector<Tri> tris_;
  int n_input_ = 0;
};

}  // namespace

std::vector<std::array<int, 3>> constrained_delaunay(
    const std::vector<Vec2>& points, const std::vector<std::pair<int, int>>& boundary_segments) {
  return Triangulator(points, boundary_segments).run();
}

void smooth_interior(std::vector<Vec2>& points, const std::vector<std::array<int, 3>>& triangles,
                     int n_boundary, int sweeps) {
  const int n = static_cast<int>(points.size());
  std::vector<std::set<int>> nbr(n);
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) {
      nbr[t[e]].insert(t[(e + 1) % 3]);
      nbr[t[e]].insert(t[(e + 2) % 3]);
    }
  std::vector<std::vector<int>> vtris(n);
  for (int k = 0; k < static_cast<int>(triangles.size()); ++k)
    for (int e = 0; e < 3; ++e) vtris[triangles[k][e]].push_back(k);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int i = n_boundary; i < n; ++i) {
      if (nbr[i].empty()) continue;
      Vec2 avg = Vec2::Zero();
      for (int j : nbr[i]) avg += points[j];
      avg /= static_cast<double>(nbr[i].size());
      const Vec2 old = points[i];
      points[i] = avg;
      for (int k : vtris[i]) {
        const auto& t = triangles[k];
        if (tri_area(points[t[0]], points[t[1]], points[t[2]]) <= 1e-14) {
          points[i] = old;  // reject a move that would invert or degenerate
          break;
        }
      }
    }
  }
}

}  // namespace droplet
