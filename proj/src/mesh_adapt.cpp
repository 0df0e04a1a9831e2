#include <algorithm>
#include <cmath>
#include <vector>

#include "droplet/errors.hpp"
#include "droplet/mesh.hpp"

namespace droplet {

namespace {

struct Located {
  int tri;
  std::array<double, 3> lambda;  // clamped to the simplex
};

// Nearest-triangle point location. For points marginally outside the mesh
// (remesh resampling can move the boundary by O(h^2)) the barycentric
// coordinates are clamped, which extrapolates constantly past the boundary.
Located locate(const Mesh2D& mesh, const Vec2& x) {
  Located best{-1, {0.0, 0.0, 0.0}};
  double best_score = -1e300;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec2& a = mesh.vertices[tri[0]];
    const Vec2& b = mesh.vertices[tri[1]];
    const Vec2& c = mesh.vertices[tri[2]];
    const double area = tri_area(a, b, c);
    const std::array<double, 3> lam = {tri_area(x, b, c) / area, tri_area(a, x, c) / area,
                                       tri_area(a, b, x) / area};
    const double score = std::min({lam[0], lam[1], lam[2]});
    if (score > best_score) {
      best_score = score;
      best = {t, lam};
    }
    if (score >= 0.0) break;  // inside; first hit is fine
  }
  if (best.tri < 0) throw GeometryError("locate: empty mesh");
  double sum = 0.0;
  for (double& l : best.lambda) {
    l = std::max(l, 0.0);
    sum += l;
  }
  for (double& l : best.lambda) l /= sum;
  return best;
}

double bubble(const std::array<double, 3>& lam) { return 27.0 * lam[0] * lam[1] * lam[2]; }

// Area enclosed by the interface chain (left contact -> right contact over the
// top) and the wall segment closing it; both contacts sit on y = 0.
double chain_area(const std::vector<Vec2>& pts) {
  double twice = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    twice += pts[i].x() * pts[i + 1].y() - pts[i + 1].x() * pts[i].y();
  return std::abs(twice) / 2.0;
}

// Resampling places the new interface vertices on chords of the old polyline,
// which biases the enclosed area inward by O(h^2). Push the interior interface
// vertices a common distance delta along their outward normals to restore the
// area exactly; the area is a quadratic polynomial in delta, so fit it at
// three offsets and take the root nearest zero. Contact vertices stay pinned.
void restore_area(Mesh2D& mesh, double area_target, double h) {
  const std::vector<int> chain = sigma_chain(mesh);
  const int m = static_cast<int>(chain.size());
  if (m < 3) return;
  std::vector<Vec2> pts(m);
  for (int k = 0; k < m; ++k) pts[k] = mesh.vertices[chain[k]];
  // Outward vertex normals: the chain runs left -> right with the fluid below,
  // so the outward side is the left of the direction of travel.
  std::vector<Vec2> nrm(m, Vec2::Zero());
  for (int k = 0; k + 1 < m; ++k) {
    const Vec2 t = pts[k + 1] - pts[k];
    const Vec2 ne = Vec2(-t.y(), t.x()).normalized();
    nrm[k] += ne;
    nrm[k + 1] += ne;
  }
  for (Vec2& n : nrm) n.normalize();
  const auto area_at = [&](double delta) {
    std::vector<Vec2> q = pts;
    for (int k = 1; k + 1 < m; ++k) q[k] += delta * nrm[k];
    return chain_area(q);
  };
  const double eps = 0.01 * h;
  const double a0 = area_at(0.0), ap = area_at(eps), am = area_at(-eps);
  const double b = (ap - am) / (2.0 * eps);
  const double c = (ap - 2.0 * a0 + am) / (eps * eps) / 2.0;
  const double f0 = a0 - area_target;
  double delta;
  const double disc = b * b - 4.0 * c * f0;
  if (std::abs(c) > 1e-12 * std::abs(b) && disc >= 0.0) {
    // Root of f0 + b d + c d^2 nearest zero (stable citardauq form).
    const double qq = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    delta = f0 / qq;
  } else {
    delta = -f0 / b;
  }
  for (int k = 1; k + 1 < m; ++k) mesh.vertices[chain[k]] += delta * nrm[k];
}

}  // namespace

Vec2 eval_velocity_at(const Mesh2D& mesh, const Eigen::VectorXd& v, const Vec2& x) {
  const int nv = mesh.num_vertices();
  if (v.size() != 2 * (nv + mesh.num_triangles()))
    throw InvalidParameterError("eval_velocity_at: dof vector size mismatch");
  const Located loc = locate(mesh, x);
  const auto& tri = mesh.triangles[loc.tri];
  Vec2 out = Vec2::Zero();
  for (int k = 0; k < 3; ++k)
    out += loc.lambda[k] * Vec2(v[2 * tri[k]], v[2 * tri[k] + 1]);
  const int bd = 2 * (nv + loc.tri);
  out += bubble(loc.lambda) * Vec2(v[bd], v[bd + 1]);
  return out;
}

double eval_pressure_at(const Mesh2D& mesh, const Eigen::VectorXd& p, const Vec2& x) {
  if (p.size() != mesh.num_vertices())
    throw InvalidParameterError("eval_pressure_at: dof vector size mismatch");
  const Located loc = locate(mesh, x);
  const auto& tri = mesh.triangles[loc.tri];
  return loc.lambda[0] * p[tri[0]] + loc.lambda[1] * p[tri[1]] + loc.lambda[2] * p[tri[2]];
}

AdaptResult adapt_mesh(const Mesh2D& mesh, const Eigen::VectorXd& v, const Eigen::VectorXd& p,
                       double h_target, double q_edge, double q_aspect) {
  const MeshQuality q = mesh_quality(mesh);
  bool bad_boundary = false;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const double len = (mesh.vertices[e.b] - mesh.vertices[e.a]).norm();
    if (len > 1.6 * h_target || len < 0.4 * h_target) bad_boundary = true;
  }
  if (q.edge_ratio <= q_edge && q.aspect <= q_aspect && !bad_boundary)
    return {mesh, v, p, false};

  std::vector<Vec2> sigma;
  for (int vi : sigma_chain(mesh)) sigma.push_back(mesh.vertices[vi]);
  Mesh2D fresh = mesh_from_boundary(sigma, h_target);

  const double area_old = measures(mesh).area;
  const double area_new = measures(fresh).area;
  if (std::abs(area_new - area_old) > 0.01 * area_old)
    throw AdaptationError("adapt_mesh: remesh changed the wetted area by more than 1%");
  restore_area(fresh, area_old, h_target);
  validate(fresh);

  const int nv = fresh.num_vertices();
  const int nt = fresh.num_triangles();
  Eigen::VectorXd v_new = Eigen::VectorXd::Zero(2 * (nv + nt));
  Eigen::VectorXd p_new = Eigen::VectorXd::Zero(nv);
  for (int i = 0; i < nv; ++i) {
    const Vec2 vel = eval_velocity_at(mesh, v, fresh.vertices[i]);
    v_new[2 * i] = vel.x();
    v_new[2 * i + 1] = vel.y();
    p_new[i] = eval_pressure_at(mesh, p, fresh.vertices[i]);
  }
  // Bubble coefficients reproduce the old velocity at each new barycenter
  // (the bubble equals 1 there and the P1 part averages the vertex values).
  for (int t = 0; t < nt; ++t) {
    const auto& tri = fresh.triangles[t];
    const Vec2 bc = (fresh.vertices[tri[0]] + fresh.vertices[tri[1]] + fresh.vertices[tri[2]]) / 3.0;
    const Vec2 vel = eval_velocity_at(mesh, v, bc);
    const Vec2 p1_part = (Vec2(v_new[2 * tri[0]], v_new[2 * tri[0] + 1]) +
                          Vec2(v_new[2 * tri[1]], v_new[2 * tri[1] + 1]) +
                          Vec2(v_new[2 * tri[2]], v_new[2 * tri[2] + 1])) /
                         3.0;
    v_new[2 * (nv + t)] = vel.x() - p1_part.x();
    v_new[2 * (nv + t) + 1] = vel.y() - p1_part.y();
  }
  // Wall vertices keep v.n = 0 exactly.
  for (const BoundaryEdge& e : fresh.boundary_edges) {
    if (e.label != BoundaryLabel::kGamma) continue;
    v_new[2 * e.a + 1] = 0.0;
    v_new[2 * e.b + 1] = 0.0;
  }
  return {std::move(fresh), std::move(v_new), std::move(p_new), true};
}

}  // namespace droplet
