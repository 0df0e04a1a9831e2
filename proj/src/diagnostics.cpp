#include "droplet/diagnostics.hpp"

#include <cmath>

#include "droplet/element.hpp"
#include "droplet/errors.hpp"
#include "droplet/forms.hpp"
#include "droplet/geometry.hpp"
#include "droplet/quadrature.hpp"

namespace droplet {

namespace {

double contact_x(const Mesh2D& mesh, int which) {
  return mesh.vertices[mesh.contact_vertices[which]].x();
}

}  // namespace

Energies energies(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params) {
  Energies e;
  e.e_k = kinetic_energy(mesh, v);
  e.e_fs = params.st_coef() * measures(mesh).sigma_length;
  auto costheta = [&](double x) { return std::cos(params.theta_s(x)); };
  e.e_w = -params.st_coef() * adaptive_simpson(costheta, contact_x(mesh, 0), contact_x(mesh, 1));
  e.e_p = potential_energy(mesh, params.grav_coef(), params.alpha);
  return e;
}

Powers powers(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params) {
  Powers p;
  p.p_v = viscous_power(mesh, v, params.re());
  p.p_fr = friction_power(mesh, v, params.slip);
  return p;
}

double euler_dissipation(const Mesh2D& mesh_prev, const Eigen::VectorXd& v_prev,
                         const Eigen::VectorXd& v_next, double dt) {
  if (v_prev.size() != v_next.size())
    throw InvalidParameterError("euler_dissipation: coefficient sizes differ");
  return kinetic_energy(mesh_prev, v_next - v_prev) / dt;
}

double volume_error(const Mesh2D& mesh, double v0) {
  if (!(v0 > 0.0)) throw InvalidParameterError("volume_error: reference volume must be positive");
  return std::abs(v0 - measures(mesh).area) / v0;
}

double discrete_balance(const Energies& prev, const Energies& next, const Powers& powers_next,
                        double dt) {
  return (next.e_k - prev.e_k + next.e_fs - prev.e_fs + next.e_w - prev.e_w + next.e_p -
          prev.e_p) /
             dt +
         powers_next.p_v + powers_next.p_fr;
}

EnergyReport make_energy_report(const AleStep& step, const Eigen::VectorXd& v_prev,
                                const Eigen::VectorXd& v_next, const Params& params, double t_next,
                                double v0, bool remeshed) {
  EnergyReport r;
  r.t = t_next;
  const Energies prev = energies(step.mesh_prev, v_prev, params);
  const Energies next = energies(step.mesh_next, v_next, params);
  const Powers pw = powers(step.mesh_next, v_next, params);
  r.e_k = next.e_k;
  r.e_fs = next.e_fs;
  r.e_w = next.e_w;
  r.e_p = next.e_p;
  r.p_v = pw.p_v;
  r.p_fr = pw.p_fr;
  r.balance = discrete_balance(prev, next, pw, step.dt);
  r.euler_diss = euler_dissipation(step.mesh_prev, v_prev, v_next, step.dt);
  r.vol_rel_err = volume_error(step.mesh_next, v0);
  const auto angles = contact_angles(step.mesh_next);
  r.theta_left = angles.first;
  r.theta_right = angles.second;
  r.v_cm = center_of_mass_velocity(step.mesh_next, v_next);
  r.scl_vol = (kinetic_energy(step.mesh_next, v_next) - kinetic_energy(step.mesh_prev, v_next)) -
              scl_kinetic_integral(step, v_next);
  r.scl_surf = scl_surface_residual(step, params.st_coef());
  r.scl_cl = scl_contact_residual(step, params.theta_s, params.ca(), params.re());
  r.scl_grav = (potential_energy(step.mesh_next, params.grav_coef(), params.alpha) -
                potential_energy(step.mesh_prev, params.grav_coef(), params.alpha)) -
               scl_gravity_integral(step, params.grav_coef(), params.alpha);
  r.remeshed = remeshed;
  return r;
}

double potential_advection(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params) {
  if (params.grav_coef() == 0.0) return 0.0;
  const DofMap dm(mesh);
  const Vec2 k(-std::sin(params.alpha), std::cos(params.alpha));
  // grad Phi is constant, so only int v is needed; exact moments:
  // int lambda_a = area/3, int bubble = 27 area/60.
  Vec2 integral = Vec2::Zero();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    for (int c = 0; c < 2; ++c) {
      double acc = 0.0;
      for (int a = 0; a < 3; ++a) acc += v[dm.udof(mesh, t, a, c)] / 3.0;
      acc += v[dm.bdof(t, c)] * 27.0 / 60.0;
      integral[c] += el.area * acc;
    }
  }
  return params.grav_coef() * k.dot(integral);
}

double potential_compression(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params) {
  if (params.grav_coef() == 0.0) return 0.0;
  const DofMap dm(mesh);
  const Vec2 k(-std::sin(params.alpha), std::cos(params.alpha));
  const TriRule& rule = tri_rule(6);
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      const double phi = params.grav_coef() * k.dot(el.point(rule.bary[q]));
      acc += rule.w[q] * phi * field_grad(mesh, dm, v, t, g).trace();
    }
    total += el.area * acc;
  }
  return total;
}

double potential_flux(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params) {
  if (params.grav_coef() == 0.0) return 0.0;
  const DofMap dm(mesh);
  const Vec2 k(-std::sin(params.alpha), std::cos(params.alpha));
  const EdgeRule& rule = edge_rule(3);
  double total = 0.0;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const Vec2& pa = mesh.vertices[e.a];
    const Vec2& pb = mesh.vertices[e.b];
    const Vec2 nlen = perp(pb - pa);
    const Vec2 va(v[dm.vdof(e.a, 0)], v[dm.vdof(e.a, 1)]);
    const Vec2 vb(v[dm.vdof(e.b, 0)], v[dm.vdof(e.b, 1)]);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = rule.s[q];
      const double phi = params.grav_coef() * k.dot((1.0 - s) * pa + s * pb);
      total += rule.w[q] * phi * ((1.0 - s) * va + s * vb).dot(nlen);
    }
  }
  return total;
}

}  // namespace droplet
