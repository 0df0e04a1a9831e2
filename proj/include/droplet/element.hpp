#pragma once

#include <array>

#include <Eigen/Dense>

#include "droplet/dofmap.hpp"
#include "droplet/geometry.hpp"
#include "droplet/mesh.hpp"

namespace droplet {

// Per-triangle geometry and mini-element basis evaluation, shared by the
// assembly and diagnostics quadrature loops. Basis functions in barycentric
// coordinates: N0..N2 = lambda, N3 = 27 l0 l1 l2 (value 1 at the barycenter).
struct Element {
  std::array<Vec2, 3> p;
  double area;
  std::array<Vec2, 3> glam;

  Element(const Mesh2D& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) p[k] = mesh.vertices[tri[k]];
    area = tri_area(p[0], p[1], p[2]);
    for (int k = 0; k < 3; ++k) glam[k] = perp(p[(k + 1) % 3] - p[(k + 2) % 3]) / (2.0 * area);
  }

  void basis(const std::array<double, 3>& l, std::array<double, 4>& n,
             std::array<Vec2, 4>& g) const {
    n = {l[0], l[1], l[2], 27.0 * l[0] * l[1] * l[2]};
    g[0] = glam[0];
    g[1] = glam[1];
    g[2] = glam[2];
    g[3] = 27.0 * (l[1] * l[2] * glam[0] + l[0] * l[2] * glam[1] + l[0] * l[1] * glam[2]);
  }

  Vec2 point(const std::array<double, 3>& l) const {
    return l[0] * p[0] + l[1] * p[1] + l[2] * p[2];
  }
};

// Value of the mini coefficient field u on triangle t at basis values n.
inline Vec2 field_value(const Mesh2D& mesh, const DofMap& dm, const Eigen::VectorXd& u, int t,
                        const std::array<double, 4>& n) {
  Vec2 val = Vec2::Zero();
  for (int a = 0; a < 4; ++a)
    val += n[a] * Vec2(u[dm.udof(mesh, t, a, 0)], u[dm.udof(mesh, t, a, 1)]);
  return val;
}

// Gradient gv(i,j) = d_j u_i of the mini field u at basis gradients g.
inline Eigen::Matrix2d field_grad(const Mesh2D& mesh, const DofMap& dm, const Eigen::VectorXd& u,
                                  int t, const std::array<Vec2, 4>& g) {
  Eigen::Matrix2d gv = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 2; ++i) {
      const double coef = u[dm.udof(mesh, t, a, i)];
      gv(i, 0) += coef * g[a].x();
      gv(i, 1) += coef * g[a].y();
    }
  return gv;
}

}  // namespace droplet
