#pragma once

#include <functional>
#include <random>

#include <Eigen/Dense>

#include "droplet/dofmap.hpp"
#include "droplet/geometry.hpp"
#include "droplet/mesh.hpp"
#include "droplet/params.hpp"

namespace droplet::test {

// Two-triangle unit square: wall on the bottom edge, Sigma elsewhere.
inline Mesh2D unit_square_mesh() {
  Mesh2D m;
  m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  m.boundary_edges = {{0, 1, BoundaryLabel::kGamma},
                      {1, 2, BoundaryLabel::kSigma},
                      {2, 3, BoundaryLabel::kSigma},
                      {3, 0, BoundaryLabel::kSigma}};
  m.contact_vertices = {0, 1};
  return m;
}

// n x n structured grid on the unit square, wall along y = 0.
inline Mesh2D grid_square_mesh(int n) {
  Mesh2D m;
  const auto id = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  for (int i = 0; i < n; ++i)
    m.boundary_edges.push_back({id(i, 0), id(i + 1, 0), BoundaryLabel::kGamma});
  for (int j = 0; j < n; ++j)
    m.boundary_edges.push_back({id(n, j), id(n, j + 1), BoundaryLabel::kSigma});
  for (int i = n; i > 0; --i)
    m.boundary_edges.push_back({id(i, n), id(i - 1, n), BoundaryLabel::kSigma});
  for (int j = n; j > 0; --j)
    m.boundary_edges.push_back({id(0, j), id(0, j - 1), BoundaryLabel::kSigma});
  m.contact_vertices = {id(0, 0), id(n, 0)};
  return m;
}

// Single CCW triangle with its base on the wall.
inline Mesh2D single_triangle_mesh(const Vec2& apex = Vec2(0.4, 0.8)) {
  Mesh2D m;
  m.vertices = {{0.0, 0.0}, {1.0, 0.0}, apex};
  m.triangles = {{0, 1, 2}};
  m.boundary_edges = {{0, 1, BoundaryLabel::kGamma},
                      {1, 2, BoundaryLabel::kSigma},
                      {2, 0, BoundaryLabel::kSigma}};
  m.contact_vertices = {0, 1};
  return m;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int size, double scale = 1.0) {
  std::uniform_real_distribution<double> unif(-scale, scale);
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v[i] = unif(rng);
  return v;
}

// P1 interpolation of an analytic vector field (vertex components only).
inline Eigen::VectorXd p1_interp(const Mesh2D& mesh, const std::function<Vec2(Vec2)>& f) {
  Eigen::VectorXd w(2 * mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    const Vec2 val = f(mesh.vertices[i]);
    w[2 * i] = val.x();
    w[2 * i + 1] = val.y();
  }
  return w;
}

// Mini interpolation: vertex values of the analytic field, zero bubbles.
inline Eigen::VectorXd mini_interp(const Mesh2D& mesh, const std::function<Vec2(Vec2)>& f) {
  const DofMap dm(mesh);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dm.n_u());
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    const Vec2 val = f(mesh.vertices[i]);
    v[dm.vdof(i, 0)] = val.x();
    v[dm.vdof(i, 1)] = val.y();
  }
  return v;
}

// Random mini-space coefficients with the wall y-components zeroed, so the
// field lives in the constrained velocity space.
inline Eigen::VectorXd random_velocity(const Mesh2D& mesh, std::mt19937_64& rng,
                                       double scale = 1.0) {
  const DofMap dm(mesh);
  Eigen::VectorXd v = random_vector(rng, dm.n_u(), scale);
  for (int d : dm.dirichlet_dofs(mesh)) v[d] = 0.0;
  return v;
}

// Random P1 field with zero y-component on the wall (admissible mesh velocity).
inline Eigen::VectorXd random_wall_safe_p1(const Mesh2D& mesh, std::mt19937_64& rng,
                                           double scale = 1.0) {
  Eigen::VectorXd w = random_vector(rng, 2 * mesh.num_vertices(), scale);
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.label != BoundaryLabel::kGamma) continue;
    w[2 * e.a + 1] = 0.0;
    w[2 * e.b + 1] = 0.0;
  }
  return w;
}

inline Params basic_params(double la = 1.0, double bo = 0.0, double alpha = 0.0,
                           const std::string& theta = "pi/2", const std::string& slip = "0") {
  Params p;
  p.la = la;
  p.bo = bo;
  p.alpha = alpha;
  p.theta_s = Expr::parse(theta);
  p.slip = Expr::parse(slip);
  return p;
}

}  // namespace droplet::test
