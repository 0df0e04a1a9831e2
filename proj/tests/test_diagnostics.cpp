#include <cmath>
#include <doctest.h>
#include <random>

#include "droplet/ale.hpp"
#include "droplet/diagnostics.hpp"
#include "droplet/dofmap.hpp"
#include "droplet/forms.hpp"
#include "droplet/mesh.hpp"
#include "support.hpp"

using namespace droplet;
using namespace droplet::test;

TEST_SUITE("diagnostics") {

TEST_CASE("energies") {
  const Mesh2D m = build_initial_cap(kPi / 2.0, 0.1);
  const DofMap dm(m);
  Params p = basic_params();

  const Energies at_rest = energies(m, Eigen::VectorXd::Zero(dm.n_u()), p);
  CHECK(at_rest.e_k == 0.0);
  CHECK(at_rest.e_fs == doctest::Approx(measures(m).sigma_length).epsilon(1e-14));
  CHECK(at_rest.e_fs == doctest::Approx(kPi).epsilon(2e-3));  // semicircle length
  CHECK(at_rest.e_w == doctest::Approx(0.0));                 // cos(pi/2) = 0
  CHECK(at_rest.e_p == 0.0);                                  // gravity off

  // Constant wetting integrand: E_w = -cos(theta_s) * |Gamma| exactly.
  Params wet = basic_params(1.0, 0.0, 0.0, "3*pi/4");
  const double ew = energies(m, Eigen::VectorXd::Zero(dm.n_u()), wet).e_w;
  CHECK(ew == doctest::Approx(-std::cos(3.0 * kPi / 4.0) * measures(m).gamma_length).epsilon(1e-12));

  // Potential energy agrees with the quadrature route in forms.
  Params heavy = basic_params(1.0, 0.7, 0.4);
  const double ep = energies(m, Eigen::VectorXd::Zero(dm.n_u()), heavy).e_p;
  CHECK(ep == doctest::Approx(potential_energy(m, 0.7, 0.4)).epsilon(1e-13));

  // Kinetic energy of a constant field is half the area.
  const Eigen::VectorXd ones = mini_interp(m, [](Vec2) { return Vec2(1.0, 0.0); });
  CHECK(energies(m, ones, p).e_k == doctest::Approx(0.5 * measures(m).area).epsilon(1e-13));
}

TEST_CASE("powers") {
  const Mesh2D sq = unit_square_mesh();
  const DofMap dm(sq);
  Params p = basic_params();

  const Eigen::VectorXd rigid = mini_interp(sq, [](Vec2 x) { return Vec2(-x.y(), x.x()); });
  CHECK(powers(sq, rigid, p).p_v <= 1e-13);
  CHECK(powers(sq, rigid, p).p_fr == 0.0);  // slip defaults to zero

  const Eigen::VectorXd strain = mini_interp(sq, [](Vec2 x) { return Vec2(x.x(), -x.y()); });
  CHECK(powers(sq, strain, p).p_v == doctest::Approx(4.0).epsilon(1e-13));

  Params fr = basic_params(1.0, 0.0, 0.0, "pi/2", "2");
  const Eigen::VectorXd slide = mini_interp(sq, [](Vec2) { return Vec2(3.0, 0.0); });
  // P_fr = sigma |v|^2 on the unit-length wall.
  CHECK(powers(sq, slide, fr).p_fr == doctest::Approx(2.0 * 9.0).epsilon(1e-13));
}

TEST_CASE("euler dissipation") {
  const Mesh2D sq = unit_square_mesh();
  const DofMap dm(sq);
  std::mt19937_64 rng(31);
  const Eigen::VectorXd v = random_vector(rng, dm.n_u());
  CHECK(euler_dissipation(sq, v, v, 0.1) == 0.0);

  const Eigen::VectorXd vn = Eigen::VectorXd::Zero(dm.n_u());
  const Eigen::VectorXd vp = mini_interp(sq, [](Vec2) { return Vec2(1.0, 0.0); });
  CHECK(euler_dissipation(sq, vn, vp, 0.1) == doctest::Approx(5.0).epsilon(1e-13));

  const Eigen::VectorXd r2 = random_vector(rng, dm.n_u());
  CHECK(euler_dissipation(sq, v, r2, 0.05) >= 0.0);
}

TEST_CASE("discrete balance arithmetic") {
  Energies prev{1.0, 2.0, 3.0, 4.0};
  Energies next{1.1, 2.2, 2.9, 4.4};
  Powers pw{0.5, 0.25};
  CHECK(discrete_balance(prev, next, pw, 0.1) == doctest::Approx(6.75).epsilon(1e-13));
  CHECK(discrete_balance(prev, prev, Powers{}, 0.1) == 0.0);
}

TEST_CASE("center of mass velocity") {
  const Mesh2D m = build_initial_cap(3.0 * kPi / 4.0, 0.15);
  const DofMap dm(m);

  CHECK(center_of_mass_velocity(m, Eigen::VectorXd::Zero(dm.n_u())).norm() == 0.0);

  const Eigen::VectorXd slide = mini_interp(m, [](Vec2) { return Vec2(0.8, 0.0); });
  const Vec2 cm = center_of_mass_velocity(m, slide);
  CHECK(std::abs(cm.x() - 0.8) <= 1e-12);
  CHECK(std::abs(cm.y()) <= 1e-12);

  // Rotation about the centroid has zero mean velocity.
  double area = 0.0;
  Vec2 centroid = Vec2::Zero();
  for (const auto& t : m.triangles) {
    const double a = tri_area(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]);
    area += a;
    centroid += a / 3.0 * (m.vertices[t[0]] + m.vertices[t[1]] + m.vertices[t[2]]);
  }
  centroid /= area;
  const Eigen::VectorXd rot =
      mini_interp(m, [&](Vec2 x) { return Vec2(-(x.y() - centroid.y()), x.x() - centroid.x()); });
  CHECK(center_of_mass_velocity(m, rot).norm() <= 1e-12);
}

TEST_CASE("volume error") {
  const Mesh2D m = build_initial_cap(kPi / 2.0, 0.2);
  const double area = measures(m).area;
  CHECK(volume_error(m, area) == 0.0);
  CHECK(volume_error(m, area / 1.001) == doctest::Approx(1e-3).epsilon(1e-10));
}

TEST_CASE("potential advection-compression-flux identity is exact") {
  // Discrete divergence theorem for Phi v: volume terms use full mini fields,
  // the flux uses the P1 trace; bubbles close element-by-element.
  const Mesh2D m = build_initial_cap(3.0 * kPi / 4.0, 0.2);
  const DofMap dm(m);
  Params p = basic_params(1.0, 0.9, 0.6);
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd v = random_vector(rng, dm.n_u());
    const double adv = potential_advection(m, v, p);
    const double comp = potential_compression(m, v, p);
    const double flux = potential_flux(m, v, p);
    const double scale = std::max({1.0, std::abs(adv), std::abs(comp), std::abs(flux)});
    CHECK(std::abs(adv + comp - flux) <= 1e-12 * scale);
  }
}

TEST_CASE("energy report fields on a zero-motion step") {
  const Mesh2D m = build_initial_cap(3.0 * kPi / 4.0, 0.15);
  const DofMap dm(m);
  Params p = basic_params(1.0, 0.2, 0.0, "3*pi/4", "1");
  std::mt19937_64 rng(33);
  const Eigen::VectorXd v = random_velocity(m, rng, 0.1);
  const AleStep still = make_ale_step(m, Eigen::VectorXd::Zero(2 * m.num_vertices()), 0.1);

  const double v0 = measures(m).area;
  const EnergyReport rep = make_energy_report(still, v, v, p, 1.5, v0, false);
  CHECK(rep.t == 1.5);
  CHECK_FALSE(rep.remeshed);
  CHECK(rep.euler_diss == 0.0);
  CHECK(rep.vol_rel_err == 0.0);

  const Powers pw = powers(m, v, p);
  // Energies cancel across the unchanged geometry; only the powers remain.
  CHECK(rep.balance == doctest::Approx(pw.p_v + pw.p_fr).epsilon(1e-12));
  CHECK(rep.p_v == doctest::Approx(pw.p_v));
  CHECK(rep.p_fr == doctest::Approx(pw.p_fr));

  const auto [tl, tr] = contact_angles(m);
  CHECK(rep.theta_left == doctest::Approx(tl));
  CHECK(rep.theta_right == doctest::Approx(tr));
  CHECK((rep.v_cm - center_of_mass_velocity(m, v)).norm() <= 1e-14);

  CHECK(std::abs(rep.scl_vol) <= 1e-14);
  CHECK(std::abs(rep.scl_surf) <= 1e-14);
  CHECK(std::abs(rep.scl_cl) <= 1e-14);
  CHECK(std::abs(rep.scl_grav) <= 1e-14);

  const EnergyReport flagged = make_energy_report(still, v, v, p, 1.6, v0, true);
  CHECK(flagged.remeshed);
}

}  // TEST_SUITE
