#include "droplet/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "droplet/dofmap.hpp"
#include "droplet/errors.hpp"
#include "droplet/forms.hpp"

namespace droplet {

namespace {

// Everything that stays fixed while Newton iterates on a frozen geometry.
// The transient block pairs the two mass matrices so the d-term transport is
// exact in time; the trapezoid impulses of the surface and contact forcings
// and the exact-in-time gravity impulse are independent of the unknowns.
struct FrozenStep {
  DofMap dm;
  double dt;
  SpMat m_prev, m_half;
  SpMat viscous, pdiv, slip;
  Eigen::VectorXd w_mini;
  Eigen::VectorXd force;      // -cn_cl + cn_st + igs
  Eigen::VectorXd transport;  // M_prev v_prev
  std::vector<int> bc;

  FrozenStep(const State& state_n, const AleStep& geo, const Params& params)
      : dm(geo.mesh_next), dt(geo.dt) {
    const Mesh2D& prev = geo.mesh_prev;
    const Mesh2D& next = geo.mesh_next;
    m_prev = assemble_mass(prev);
    m_half = SpMat(0.5 * (assemble_mass(next) + m_prev));
    viscous = assemble_viscous(next, params.re());
    pdiv = assemble_pressure_div(next);
    slip = assemble_slip(next, params.slip);
    w_mini = extend_p1_to_mini(dm, geo.w);
    const Eigen::VectorXd cn_st =
        0.5 * dt *
        (assemble_surface_tension(prev, params.ca(), params.re()) +
         assemble_surface_tension(next, params.ca(), params.re()));
    const Eigen::VectorXd cn_cl =
        0.5 * dt *
        (assemble_contact_line(prev, params.theta_s, params.ca(), params.re()) +
         assemble_contact_line(next, params.theta_s, params.ca(), params.re()));
    force = -cn_cl + cn_st + gravity_impulse(geo, params.grav_coef(), params.alpha);
    transport = m_prev * state_n.v;
    bc = dm.dirichlet_dofs(next);
  }

  Eigen::VectorXd residual(const Mesh2D& next, const Eigen::VectorXd& v,
                           const Eigen::VectorXd& p) const {
    const SpMat cskew = assemble_convection_skew(next, Eigen::VectorXd(v - w_mini));
    Eigen::VectorXd r(dm.n_total());
    r.head(dm.n_u()) = m_half * v - transport +
                       dt * (cskew * v + viscous * v + slip * v - pdiv.transpose() * p) + force;
    r.tail(dm.n_p()) = -dt * (pdiv * v);
    for (int d : bc) r[d] = 0.0;
    return r;
  }

  SpMat jacobian(const Mesh2D& next, const Eigen::VectorXd& v) const {
    const SpMat cskew = assemble_convection_skew(next, Eigen::VectorXd(v - w_mini));
    const SpMat e1 = assemble_conv_e1(next, v);
    const SpMat e2 = assemble_conv_e2(next, v);
    const SpMat jvv(m_half + dt * SpMat(cskew + 0.5 * e1 - 0.5 * e2 + viscous + slip));
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(jvv.nonZeros()) + 2 * pdiv.nonZeros());
    for (int col = 0; col < jvv.outerSize(); ++col)
      for (SpMat::InnerIterator it(jvv, col); it; ++it)
        trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    const int off = dm.n_u();
    for (int col = 0; col < pdiv.outerSize(); ++col)
      for (SpMat::InnerIterator it(pdiv, col); it; ++it) {
        const int rp = static_cast<int>(it.row());
        const int cu = static_cast<int>(it.col());
        trip.emplace_back(cu, off + rp, -dt * it.value());
        trip.emplace_back(off + rp, cu, -dt * it.value());
      }
    SpMat j(dm.n_total(), dm.n_total());
    j.setFromTriplets(trip.begin(), trip.end());
    return j;
  }
};

struct NewtonResult {
  int iters = 0;
  double residual = 0.0;
};

NewtonResult newton_solve(const FrozenStep& fs, const Mesh2D& next, Eigen::VectorXd& v,
                          Eigen::VectorXd& p, const StepControls& controls) {
  double r0 = 0.0;
  for (int it = 0;; ++it) {
    const Eigen::VectorXd r = fs.residual(next, v, p);
    const double norm = r.norm();
    if (it == 0) r0 = norm;
    if (norm <= std::max(controls.tol_newton * r0, 1e-12)) return {it, norm};
    if (!std::isfinite(norm) || norm > 1e8 * (r0 + 1.0))
      throw StepFailureError("newton iteration diverged; reduce dt");
    if (it >= controls.max_newton)
      throw StepFailureError("newton did not converge in " +
                             std::to_string(controls.max_newton) + " iterations; reduce dt");
    SpMat j = fs.jacobian(next, v);
    Eigen::VectorXd rhs = -r;
    apply_dirichlet(j, rhs, fs.bc);
    Eigen::VectorXd delta;
    try {
      delta = solve_sparse(j, rhs);
    } catch (const SolverError& err) {
      throw StepFailureError(std::string("newton linear solve failed: ") + err.what());
    }
    v += delta.head(fs.dm.n_u());
    p += delta.tail(fs.dm.n_p());
  }
}

double rms_velocity(const Mesh2D& mesh, const Eigen::VectorXd& v) {
  const double area = measures(mesh).area;
  return std::sqrt(2.0 * kinetic_energy(mesh, v) / area);
}

}  // namespace

State initial_cap_state(double theta0, double h) {
  State s;
  s.mesh = build_initial_cap(theta0, h);
  const DofMap dm(s.mesh);
  s.v = Eigen::VectorXd::Zero(dm.n_u());
  s.p = Eigen::VectorXd::Zero(dm.n_p());
  s.w = Eigen::VectorXd::Zero(2 * dm.nv);
  s.t = 0.0;
  return s;
}

Eigen::VectorXd step_residual(const State& state_n, const AleStep& geo, const Eigen::VectorXd& v,
                              const Eigen::VectorXd& p, const Params& params) {
  return FrozenStep(state_n, geo, params).residual(geo.mesh_next, v, p);
}

SpMat step_jacobian(const State& state_n, const AleStep& geo, const Eigen::VectorXd& v,
                    const Eigen::VectorXd&, const Params& params) {
  return FrozenStep(state_n, geo, params).jacobian(geo.mesh_next, v);
}

std::pair<State, StepReport> step(const State& state_n, const Params& params, double dt,
                                  const StepControls& controls) {
  params.validate();
  if (!(dt > 0.0)) throw InvalidParameterError("step: dt must be positive");
  const DofMap dm(state_n.mesh);
  if (state_n.v.size() != dm.n_u() || state_n.p.size() != dm.n_p() ||
      state_n.w.size() != 2 * dm.nv)
    throw InvalidParameterError("step: state coefficient sizes do not match the mesh");

  Eigen::VectorXd w_k = state_n.w;
  Eigen::VectorXd v = state_n.v;
  Eigen::VectorXd p = state_n.p;
  StepReport rep;
  rep.dt_used = dt;

  for (int k = 1; k <= controls.max_geom; ++k) {
    AleStep geo;
    try {
      geo = make_ale_step(state_n.mesh, w_k, dt);
    } catch (const GeometryError& err) {
      throw StepFailureError(std::string("geometry iterate tangled the mesh: ") + err.what());
    }
    const Mesh2D& next = geo.mesh_next;
    params.theta_at(next.vertices[next.contact_vertices[0]].x());
    params.theta_at(next.vertices[next.contact_vertices[1]].x());

    const FrozenStep fs(state_n, geo, params);
    for (int d : fs.bc) v[d] = 0.0;
    const NewtonResult nr = newton_solve(fs, next, v, p, controls);

    const Eigen::VectorXd w_new = mesh_velocity(next, v.head(2 * dm.nv));
    double delta = 0.0;
    for (int vert = 0; vert < dm.nv; ++vert)
      delta = std::max(delta, dt * Vec2(w_new[2 * vert] - w_k[2 * vert],
                                        w_new[2 * vert + 1] - w_k[2 * vert + 1])
                                  .norm());
    rep.newton_iters = nr.iters;
    rep.newton_residual = nr.residual;
    rep.geometry_iters = k;
    rep.geometry_delta = delta;

    if (delta <= controls.tol_geom) {
      State out;
      try {
        out.mesh = move_mesh(state_n.mesh, w_new, dt);
      } catch (const GeometryError& err) {
        throw StepFailureError(std::string("final mesh move tangled the mesh: ") + err.what());
      }
      out.v = v;
      out.p = p;
      out.w = w_new;
      out.t = state_n.t + dt;
      rep.max_principle_excess = max_principle_violation(next, w_new);
      return {std::move(out), rep};
    }
    w_k = w_new;
  }
  throw StepFailureError("geometry fixed point did not converge in " +
                         std::to_string(controls.max_geom) + " iterations; reduce dt");
}

RunSummary run(const State& initial, const Params& params, double dt, double t_final,
               const RunControls& controls, const StepHook& hook) {
  params.validate();
  if (!(dt > 0.0)) throw InvalidParameterError("run: dt must be positive");
  if (!(t_final >= 0.0)) throw InvalidParameterError("run: t_final must be nonnegative");

  RunSummary sum;
  const double v0 = measures(initial.mesh).area;
  State state = initial;
  bool flag_remeshed = false;
  int steps_since_quality = 0;

  while (state.t < t_final - 1e-12) {
    double dt_att = std::min(dt, t_final - state.t);
    if (dt_att < 1e-9 * dt) break;
    int halvings = 0;
    for (;;) {
      try {
        auto [next, rep] = step(state, params, dt_att, controls.step);
        AleStep geo;
        geo.mesh_prev = state.mesh;
        geo.mesh_next = next.mesh;
        geo.w = next.w;
        geo.dt = dt_att;
        const EnergyReport er =
            make_energy_report(geo, state.v, next.v, params, next.t, v0, flag_remeshed);
        flag_remeshed = false;
        if (hook) hook(StepRecord{state, next, rep, er});
        sum.max_balance_positive = std::max(sum.max_balance_positive, std::max(er.balance, 0.0));
        sum.max_vol_err = std::max(sum.max_vol_err, er.vol_rel_err);
        state = std::move(next);
        ++sum.steps;
        break;
      } catch (const StepFailureError& err) {
        if (halvings >= controls.max_dt_halvings) {
          sum.aborted = true;
          sum.abort_reason = err.what();
          sum.t_final = state.t;
          sum.steady = false;
          sum.last = std::move(state);
          return sum;
        }
        ++halvings;
        ++sum.dt_halvings;
        dt_att *= 0.5;
      }
    }

    if (++steps_since_quality >= controls.quality_cadence) {
      steps_since_quality = 0;
      const AdaptResult ar =
          adapt_mesh(state.mesh, state.v, state.p, controls.h_target, controls.q_edge,
                     controls.q_aspect);
      if (ar.changed) {
        const double jump = std::abs(measures(ar.mesh).area - measures(state.mesh).area) / v0;
        sum.max_remesh_jump = std::max(sum.max_remesh_jump, jump);
        ++sum.remesh_count;
        State fresh;
        fresh.t = state.t;
        fresh.v = ar.v;
        fresh.p = ar.p;
        fresh.w = mesh_velocity(ar.mesh, ar.v.head(2 * ar.mesh.num_vertices()));
        fresh.mesh = ar.mesh;
        state = std::move(fresh);
        flag_remeshed = true;
      }
    }
  }

  sum.t_final = state.t;
  sum.steady = rms_velocity(state.mesh, state.v) <= 1e-3;
  sum.last = std::move(state);
  return sum;
}

}  // namespace droplet
