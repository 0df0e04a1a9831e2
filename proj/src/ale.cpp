#include "droplet/ale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "droplet/dofmap.hpp"
#include "droplet/errors.hpp"
#include "droplet/forms.hpp"
#include "droplet/geometry.hpp"
#include "droplet/quadrature.hpp"
#include "droplet/sparse.hpp"

namespace droplet {

namespace {

// Gradient G(i,j) = d_j w_i of the P1 field on triangle t of `mesh`.
Eigen::Matrix2d p1_gradient(const Mesh2D& mesh, const Eigen::VectorXd& w, int t) {
  const auto& tri = mesh.triangles[t];
  const Vec2& p0 = mesh.vertices[tri[0]];
  const Vec2& p1 = mesh.vertices[tri[1]];
  const Vec2& p2 = mesh.vertices[tri[2]];
  const double area = tri_area(p0, p1, p2);
  const Vec2 g[3] = {perp(p1 - p2) / (2.0 * area), perp(p2 - p0) / (2.0 * area),
                     perp(p0 - p1) / (2.0 * area)};
  Eigen::Matrix2d grad = Eigen::Matrix2d::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 2; ++i) {
      grad(i, 0) += w[2 * tri[k] + i] * g[k].x();
      grad(i, 1) += w[2 * tri[k] + i] * g[k].y();
    }
  return grad;
}

std::vector<int> boundary_vertex_list(const Mesh2D& mesh) {
  std::vector<char> on_boundary(mesh.num_vertices(), 0);
  for (const BoundaryEdge& e : mesh.boundary_edges) on_boundary[e.a] = on_boundary[e.b] = 1;
  std::vector<int> out;
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (on_boundary[v]) out.push_back(v);
  return out;
}

double contact_speed(const AleStep& s, int which) {
  return s.w[2 * s.mesh_prev.contact_vertices[which]];
}

}  // namespace

AleStep make_ale_step(const Mesh2D& mesh_prev, const Eigen::VectorXd& w, double dt) {
  if (w.size() != 2 * mesh_prev.num_vertices())
    throw InvalidParameterError("make_ale_step: w must be a P1 vertex field");
  if (!(dt > 0.0)) throw InvalidParameterError("make_ale_step: dt must be positive");
  AleStep step;
  step.mesh_prev = mesh_prev;
  step.mesh_next = move_mesh(mesh_prev, w, dt);
  step.w = w;
  step.dt = dt;
  return step;
}

void check_ale_step(const AleStep& step) {
  const Mesh2D& a = step.mesh_prev;
  const Mesh2D& b = step.mesh_next;
  if (a.num_vertices() != b.num_vertices() || a.triangles != b.triangles)
    throw InvalidParameterError("ale step: meshes must share one topology");
  if (step.w.size() != 2 * a.num_vertices())
    throw InvalidParameterError("ale step: w size mismatch");
  for (int v = 0; v < a.num_vertices(); ++v) {
    const Vec2 expect = a.vertices[v] + step.dt * Vec2(step.w[2 * v], step.w[2 * v + 1]);
    if ((b.vertices[v] - expect).lpNorm<Eigen::Infinity>() > 1e-12)
      throw InvalidParameterError("ale step: vertex motion does not match dt * w");
  }
}

Eigen::VectorXd mesh_velocity(const Mesh2D& mesh, const Eigen::VectorXd& boundary_values) {
  const int nv = mesh.num_vertices();
  if (boundary_values.size() != 2 * nv)
    throw InvalidParameterError("mesh_velocity: boundary_values must be a P1 vertex field");

  // Scalar P1 stiffness, shared by both components.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec2& p0 = mesh.vertices[tri[0]];
    const Vec2& p1 = mesh.vertices[tri[1]];
    const Vec2& p2 = mesh.vertices[tri[2]];
    const double area = tri_area(p0, p1, p2);
    const Vec2 g[3] = {perp(p1 - p2) / (2.0 * area), perp(p2 - p0) / (2.0 * area),
                       perp(p0 - p1) / (2.0 * area)};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) trip.emplace_back(tri[a], tri[b], area * g[a].dot(g[b]));
  }
  SpMat stiffness(nv, nv);
  stiffness.setFromTriplets(trip.begin(), trip.end());

  std::vector<char> on_gamma(nv, 0);
  for (const BoundaryEdge& e : mesh.boundary_edges)
    if (e.label == BoundaryLabel::kGamma) on_gamma[e.a] = on_gamma[e.b] = 1;
  const std::vector<int> bverts = boundary_vertex_list(mesh);

  Eigen::VectorXd w(2 * nv);
  for (int c = 0; c < 2; ++c) {
    std::vector<double> values;
    values.reserve(bverts.size());
    for (int v : bverts) {
      double val = boundary_values[2 * v + c];
      if (c == 1 && on_gamma[v]) {
        if (std::abs(val) > 1e-12)
          throw InvalidParameterError("mesh_velocity: wall boundary values must slide");
        val = 0.0;
      }
      values.push_back(val);
    }
    SpMat a = stiffness;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nv);
    apply_dirichlet(a, rhs, bverts, values);
    Eigen::VectorXd wc = solve_sparse(a, rhs);
    // Boundary values must hold exactly, not to solver tolerance: the energy
    // audits pair the mesh motion with the fluid trace.
    for (std::size_t k = 0; k < bverts.size(); ++k) wc[bverts[k]] = values[k];
    for (int v = 0; v < nv; ++v) w[2 * v + c] = wc[v];
  }
  return w;
}

double max_principle_violation(const Mesh2D& mesh, const Eigen::VectorXd& w) {
  const int nv = mesh.num_vertices();
  if (w.size() != 2 * nv)
    throw InvalidParameterError("max_principle_violation: w must be a P1 vertex field");
  std::vector<char> on_boundary(nv, 0);
  for (const BoundaryEdge& e : mesh.boundary_edges) on_boundary[e.a] = on_boundary[e.b] = 1;
  double worst = 0.0;
  for (int c = 0; c < 2; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int v = 0; v < nv; ++v)
      if (on_boundary[v]) {
        lo = std::min(lo, w[2 * v + c]);
        hi = std::max(hi, w[2 * v + c]);
      }
    for (int v = 0; v < nv; ++v)
      if (!on_boundary[v]) {
        worst = std::max(worst, w[2 * v + c] - hi);
        worst = std::max(worst, lo - w[2 * v + c]);
      }
  }
  return worst;
}

double scl_volume_integral(const AleStep& step, const Eigen::VectorXd& psi) {
  const Mesh2D& mesh = step.mesh_prev;
  if (psi.size() != mesh.num_vertices())
    throw InvalidParameterError("scl_volume_integral: psi must be a P1 scalar field");
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Eigen::Matrix2d g = p1_gradient(mesh, step.w, t);
    const double jinc = step.dt * g.trace() + step.dt * step.dt * g.determinant();
    const double area = tri_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                 mesh.vertices[tri[2]]);
    const double mean = (psi[tri[0]] + psi[tri[1]] + psi[tri[2]]) / 3.0;
    total += area * mean * jinc;
  }
  return total;
}

double transported_integral_difference(const AleStep& step, const Eigen::VectorXd& psi) {
  if (psi.size() != step.mesh_prev.num_vertices())
    throw InvalidParameterError("transported_integral_difference: psi size mismatch");
  double total = 0.0;
  for (std::size_t t = 0; t < step.mesh_prev.triangles.size(); ++t) {
    const auto& tri = step.mesh_prev.triangles[t];
    const double mean = (psi[tri[0]] + psi[tri[1]] + psi[tri[2]]) / 3.0;
    const double a_prev = tri_area(step.mesh_prev.vertices[tri[0]],
                                   step.mesh_prev.vertices[tri[1]],
                                   step.mesh_prev.vertices[tri[2]]);
    const double a_next = tri_area(step.mesh_next.vertices[tri[0]],
                                   step.mesh_next.vertices[tri[1]],
                                   step.mesh_next.vertices[tri[2]]);
    total += mean * (a_next - a_prev);
  }
  return total;
}

double scl_kinetic_integral(const AleStep& step, const Eigen::VectorXd& v) {
  const Mesh2D& mesh = step.mesh_prev;
  const std::vector<double> tk = triangle_kinetic(mesh, v);
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Matrix2d g = p1_gradient(mesh, step.w, t);
    total += tk[t] * (step.dt * g.trace() + step.dt * step.dt * g.determinant());
  }
  return total;
}

double scl_surface_residual(const AleStep& step, double coef) {
  auto div_sigma_w = [&](double t) {
    double sum = 0.0;
    for (const BoundaryEdge& e : step.mesh_prev.boundary_edges) {
      if (e.label != BoundaryLabel::kSigma) continue;
      const Vec2 wa(step.w[2 * e.a], step.w[2 * e.a + 1]);
      const Vec2 wb(step.w[2 * e.b], step.w[2 * e.b + 1]);
      const Vec2 dw = wb - wa;
      const Vec2 edge = (step.mesh_prev.vertices[e.b] + t * wb) -
                        (step.mesh_prev.vertices[e.a] + t * wa);
      sum += edge.dot(dw) / edge.norm();
    }
    return sum;
  };
  const double cn = coef * 0.5 * step.dt * (div_sigma_w(0.0) + div_sigma_w(step.dt));
  const double exact =
      coef * (measures(step.mesh_next).sigma_length - measures(step.mesh_prev).sigma_length);
  return cn - exact;
}

double cn_contact_power(const AleStep& step, const Expr& theta_s, double ca, double re) {
  const double coef = 1.0 / (ca * re);
  const double wl = contact_speed(step, 0);
  const double wr = contact_speed(step, 1);
  auto power = [&](const Mesh2D& mesh) {
    const double xl = mesh.vertices[mesh.contact_vertices[0]].x();
    const double xr = mesh.vertices[mesh.contact_vertices[1]].x();
    return coef * (std::cos(theta_s(xr)) * wr - std::cos(theta_s(xl)) * wl);
  };
  return 0.5 * step.dt * (power(step.mesh_prev) + power(step.mesh_next));
}

double scl_contact_residual(const AleStep& step, const Expr& theta_s, double ca, double re) {
  const double coef = 1.0 / (ca * re);
  auto contact_x = [](const Mesh2D& mesh, int which) {
    return mesh.vertices[mesh.contact_vertices[which]].x();
  };
  auto costheta = [&](double x) { return std::cos(theta_s(x)); };
  // Exact minus-wetting-energy change: coef * (strip at the right contact
  // minus strip at the left contact).
  const double exact =
      coef * (adaptive_simpson(costheta, contact_x(step.mesh_prev, 1), contact_x(step.mesh_next, 1)) -
              adaptive_simpson(costheta, contact_x(step.mesh_prev, 0), contact_x(step.mesh_next, 0)));
  return cn_contact_power(step, theta_s, ca, re) - exact;
}

double scl_gravity_integral(const AleStep& step, double grav_coef, double alpha) {
  if (grav_coef == 0.0) return 0.0;
  const Vec2 k(-std::sin(alpha), std::cos(alpha));
  const EdgeRule& rule = edge_rule(3);
  double total = 0.0;
  for (const BoundaryEdge& e : step.mesh_prev.boundary_edges) {
    const Vec2& pa = step.mesh_prev.vertices[e.a];
    const Vec2& pb = step.mesh_prev.vertices[e.b];
    const Vec2 wa(step.w[2 * e.a], step.w[2 * e.a + 1]);
    const Vec2 wb(step.w[2 * e.b], step.w[2 * e.b + 1]);
    for (std::size_t qt = 0; qt < rule.size(); ++qt) {
      const double t = step.dt * rule.s[qt];
      const Vec2 a = pa + t * wa;
      const Vec2 b = pb + t * wb;
      const Vec2 nlen = perp(b - a);
      for (std::size_t qs = 0; qs < rule.size(); ++qs) {
        const double s = rule.s[qs];
        const Vec2 x = (1.0 - s) * a + s * b;
        const Vec2 w = (1.0 - s) * wa + s * wb;
        total += step.dt * rule.w[qt] * rule.w[qs] * grav_coef * k.dot(x) * w.dot(nlen);
      }
    }
  }
  return total;
}

Eigen::VectorXd gravity_impulse(const AleStep& step, double grav_coef, double alpha) {
  const DofMap dm(step.mesh_prev);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dm.n_u());
  if (grav_coef == 0.0) return f;
  const Vec2 k(-std::sin(alpha), std::cos(alpha));
  const EdgeRule& rule = edge_rule(3);
  for (const BoundaryEdge& e : step.mesh_prev.boundary_edges) {
    const Vec2& pa = step.mesh_prev.vertices[e.a];
    const Vec2& pb = step.mesh_prev.vertices[e.b];
    const Vec2 wa(step.w[2 * e.a], step.w[2 * e.a + 1]);
    const Vec2 wb(step.w[2 * e.b], step.w[2 * e.b + 1]);
    const int verts[2] = {e.a, e.b};
    for (std::size_t qt = 0; qt < rule.size(); ++qt) {
      const double t = step.dt * rule.s[qt];
      const Vec2 a = pa + t * wa;
      const Vec2 b = pb + t * wb;
      const Vec2 nlen = perp(b - a);
      for (std::size_t qs = 0; qs < rule.size(); ++qs) {
        const double s = rule.s[qs];
        const double phi = grav_coef * k.dot((1.0 - s) * a + s * b);
        const double sh[2] = {1.0 - s, s};
        const double wq = step.dt * rule.w[qt] * rule.w[qs] * phi;
        for (int idx = 0; idx < 2; ++idx)
          for (int c = 0; c < 2; ++c) f[dm.vdof(verts[idx], c)] += wq * sh[idx] * nlen[c];
      }
    }
  }
  return f;
}

}  // namespace droplet
