#include <doctest.h>

#include <droplet/ale.hpp>
#include <droplet/diagnostics.hpp>
#include <droplet/dofmap.hpp>
#include <droplet/errors.hpp>
#include <droplet/forms.hpp>
#include <droplet/stepper.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "support.hpp"

using namespace droplet;
using test::basic_params;

namespace {

// Zero-motion geometry update: mesh_next == mesh_prev, w == 0.
AleStep frozen_geometry(const Mesh2D& mesh, double dt) {
  return make_ale_step(mesh, Eigen::VectorXd::Zero(2 * static_cast<int>(mesh.vertices.size())), dt);
}

Eigen::MatrixXd block(const SpMat& m, int row0, int rows, int col0, int cols) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      const int i = static_cast<int>(it.row()) - row0;
      const int j = static_cast<int>(it.col()) - col0;
      if (i >= 0 && i < rows && j >= 0 && j < cols) out(i, j) += it.value();
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("stepper") {

TEST_CASE("initial cap state starts at rest with the requested shape") {
  const double theta = 3.0 * M_PI / 4.0;
  const State s = initial_cap_state(theta, 0.1);
  validate(s.mesh);
  const DofMap dm(s.mesh);

  CHECK(s.t == 0.0);
  CHECK(s.v.size() == dm.n_u());
  CHECK(s.p.size() == dm.n_p());
  CHECK(s.v.norm() == 0.0);
  CHECK(s.w.norm() == 0.0);

  // Unit radius of curvature: area theta - sin(theta)cos(theta), apex 1 - cos(theta).
  const double area = measures(s.mesh).area;
  CHECK(area == doctest::Approx(theta - std::sin(theta) * std::cos(theta)).epsilon(2e-3));
  CHECK(s.mesh.vertices[s.mesh.contact_vertices[0]].x() == doctest::Approx(-std::sin(theta)));
  CHECK(s.mesh.vertices[s.mesh.contact_vertices[1]].x() == doctest::Approx(std::sin(theta)));
}

TEST_CASE("residual at the capillary equilibrium shrinks under refinement") {
  // Unit-radius cap at theta = theta_s, no gravity, v = 0, p = st_coef * kappa = 1.
  // The exact fields solve the continuous problem; what remains is the polygonal
  // consistency defect of the curvature force, so the norm must drop with h.
  const Params params = basic_params(1.0, 0.0, 0.0, "3*pi/4");
  const double dt = 0.1;

  double prev_norm = -1.0;
  for (const double h : {0.2, 0.1}) {
    const State s = initial_cap_state(3.0 * M_PI / 4.0, h);
    const DofMap dm(s.mesh);
    const AleStep geo = frozen_geometry(s.mesh, dt);
    const Eigen::VectorXd v = Eigen::VectorXd::Zero(dm.n_u());
    const Eigen::VectorXd p = Eigen::VectorXd::Ones(dm.n_p());

    const Eigen::VectorXd r = step_residual(s, geo, v, p, params);
    REQUIRE(r.size() == dm.n_u() + dm.n_p());

    // Continuity rows vanish identically at v = 0.
    CHECK(r.tail(dm.n_p()).norm() == doctest::Approx(0.0).epsilon(1e-14));

    const double norm = r.norm();
    CHECK(norm < 0.2 * dt);
    if (prev_norm >= 0.0) CHECK(norm < prev_norm);
    prev_norm = norm;
  }
}

TEST_CASE("jacobian at rest matches the assembled operator blocks") {
  const Params params = basic_params(2.0, 0.0, 0.0, "3*pi/4", "1");
  const double dt = 0.07;
  const State s = initial_cap_state(3.0 * M_PI / 4.0, 0.3);
  const DofMap dm(s.mesh);
  const AleStep geo = frozen_geometry(s.mesh, dt);
  const Eigen::VectorXd v = Eigen::VectorXd::Zero(dm.n_u());
  const Eigen::VectorXd p = Eigen::VectorXd::Zero(dm.n_p());

  const SpMat j = step_jacobian(s, geo, v, p, params);
  REQUIRE(j.rows() == dm.n_u() + dm.n_p());

  // At v = 0 and w = 0 every convection contribution carries a factor of the
  // velocity, so the momentum block reduces to M + dt (A + R).
  const Eigen::MatrixXd mass = Eigen::MatrixXd(assemble_mass(s.mesh));
  const Eigen::MatrixXd visc = Eigen::MatrixXd(assemble_viscous(s.mesh, params.re()));
  const Eigen::MatrixXd slip = Eigen::MatrixXd(assemble_slip(s.mesh, params.slip));
  const Eigen::MatrixXd expected_vv = mass + dt * (visc + slip);

  const Eigen::MatrixXd jvv = block(j, 0, dm.n_u(), 0, dm.n_u());
  const double scale = expected_vv.cwiseAbs().maxCoeff();
  CHECK((jvv - expected_vv).cwiseAbs().maxCoeff() <= 1e-13 * scale);

  const Eigen::MatrixXd bmat = Eigen::MatrixXd(assemble_pressure_div(s.mesh));
  const Eigen::MatrixXd jvp = block(j, 0, dm.n_u(), dm.n_u(), dm.n_p());
  const Eigen::MatrixXd jpv = block(j, dm.n_u(), dm.n_p(), 0, dm.n_u());
  const double bscale = bmat.cwiseAbs().maxCoeff();
  CHECK((jvp + dt * bmat.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * dt * bscale);
  CHECK((jpv + dt * bmat).cwiseAbs().maxCoeff() <= 1e-13 * dt * bscale);
}

TEST_CASE("one step from the equilibrium cap stays at rest") {
  const Params params = basic_params(1.0, 0.0, 0.0, "3*pi/4");
  const State s0 = initial_cap_state(3.0 * M_PI / 4.0, 0.1);
  const double area0 = measures(s0.mesh).area;

  auto [s1, report] = step(s0, params, 0.1);

  CHECK(s1.t == doctest::Approx(0.1));
  CHECK(report.newton_iters >= 1);
  CHECK(report.dt_used == doctest::Approx(0.1));

  const Energies e = energies(s1.mesh, s1.v, params);
  CHECK(e.e_k <= 1e-10);

  const double area1 = measures(s1.mesh).area;
  CHECK(std::abs(area1 - area0) / area0 <= 1e-6);
}

TEST_CASE("gravity-off run keeps the droplet pinned through t = 5") {
  const Params params = basic_params(1.0, 0.0, 0.0, "3*pi/4");
  const State s0 = initial_cap_state(3.0 * M_PI / 4.0, 0.15);
  const double xl0 = s0.mesh.vertices[s0.mesh.contact_vertices[0]].x();
  const double xr0 = s0.mesh.vertices[s0.mesh.contact_vertices[1]].x();

  const RunSummary summary = run(s0, params, 0.1, 5.0);

  REQUIRE(!summary.aborted);
  CHECK(summary.t_final == doctest::Approx(5.0));
  CHECK(summary.steps == 50);
  CHECK(summary.dt_halvings == 0);
  CHECK(summary.max_vol_err <= 1e-3);
  CHECK(summary.steady);

  const Mesh2D& m = summary.last.mesh;
  const double xl = m.vertices[m.contact_vertices[0]].x();
  const double xr = m.vertices[m.contact_vertices[1]].x();
  CHECK(std::abs(xl - xl0) + std::abs(xr - xr0) <= 1e-3);
}

TEST_CASE("run with t_final = 0 returns the initial state untouched") {
  const Params params = basic_params();
  const State s0 = initial_cap_state(M_PI / 2.0, 0.2);
  const RunSummary summary = run(s0, params, 0.1, 0.0);

  CHECK(summary.steps == 0);
  CHECK(summary.t_final == 0.0);
  CHECK(!summary.aborted);
  CHECK(summary.last.t == 0.0);
  CHECK((summary.last.v - s0.v).norm() == 0.0);
  CHECK(summary.last.mesh.vertices.size() == s0.mesh.vertices.size());
}

TEST_CASE("final step is clipped to land exactly on t_final") {
  const Params params = basic_params(1.0, 0.0, 0.0, "3*pi/4");
  const State s0 = initial_cap_state(3.0 * M_PI / 4.0, 0.2);
  const RunSummary summary = run(s0, params, 0.3, 0.5);

  REQUIRE(!summary.aborted);
  CHECK(summary.steps == 2);
  CHECK(summary.last.t == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("hopeless initial data aborts with the last good state") {
  // A violent contraction inverts triangles even after every dt halving; the
  // run must stop cleanly instead of throwing.
  const Params params = basic_params(1.0, 0.0, 0.0, "3*pi/4");
  State s0 = initial_cap_state(3.0 * M_PI / 4.0, 0.25);
  for (int i = 0; i < s0.mesh.num_vertices(); ++i) {
    const Vec2 x = s0.mesh.vertices[i];
    s0.v[2 * i] = -2e3 * x.x();
    if (x.y() > 1e-12) s0.v[2 * i + 1] = -2e3 * x.y();
  }

  const RunSummary summary = run(s0, params, 0.5, 2.0);
  CHECK(summary.aborted);
  CHECK(!summary.abort_reason.empty());
  CHECK(summary.last.t < 2.0);
}

}  // TEST_SUITE
