#pragma once

#include <Eigen/Dense>

#include "droplet/ale.hpp"
#include "droplet/mesh.hpp"
#include "droplet/params.hpp"

namespace droplet {

// Per-step energy bookkeeping. `balance` is the discrete energy-balance
// residual (a power): nonpositive up to the trapezoid-quadrature defects of
// the surface and wetting terms, which are reported alongside.
struct EnergyReport {
  double t = 0.0;
  double e_k = 0.0, e_fs = 0.0, e_w = 0.0, e_p = 0.0;
  double p_v = 0.0, p_fr = 0.0;
  double balance = 0.0;
  double euler_diss = 0.0;
  double vol_rel_err = 0.0;
  double theta_left = 0.0, theta_right = 0.0;
  Vec2 v_cm = Vec2::Zero();
  // Dual-route audit defects: volume and gravity transport are exact in time
  // (defects at rounding level); surface and contact use trapezoid quadrature
  // (defects O(dt^3) per step).
  double scl_vol = 0.0, scl_surf = 0.0, scl_cl = 0.0, scl_grav = 0.0;
  bool remeshed = false;
};

struct Energies {
  double e_k = 0.0, e_fs = 0.0, e_w = 0.0, e_p = 0.0;
};

// E_k = int (1/2)|v|^2, E_fs = |Sigma|/(Ca Re),
// E_w = -int_Gamma cos(theta_s)/(Ca Re) dS (adaptive quadrature between the
// contact abscissae, so arbitrary theta_s expressions stay exact to 1e-13),
// E_p = int Phi.
Energies energies(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params);

// P_v = int (1/(2 Re))|D(v)|^2 and P_fr = int_Gamma sigma |v|^2 (wall at rest).
struct Powers {
  double p_v = 0.0, p_fr = 0.0;
};
Powers powers(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params);

// (1/dt) * int_{Omega_n} (1/2)|v_next - v_prev|^2 with v_next pulled back
// coefficientwise. Nonnegative by construction.
double euler_dissipation(const Mesh2D& mesh_prev, const Eigen::VectorXd& v_prev,
                         const Eigen::VectorXd& v_next, double dt);

// |v0 - area| / v0.
double volume_error(const Mesh2D& mesh, double v0);

// (E^{n+1} - E^n)/dt summed over all four energies plus P_v + P_fr at n+1.
double discrete_balance(const Energies& prev, const Energies& next, const Powers& powers_next,
                        double dt);

// Full per-step report. `step` carries the accepted motion (mesh_prev is the
// state at t_n, mesh_next at t_n + dt), v_prev/v_next the velocities on them.
EnergyReport make_energy_report(const AleStep& step, const Eigen::VectorXd& v_prev,
                                const Eigen::VectorXd& v_next, const Params& params, double t_next,
                                double v0, bool remeshed);

// Integrals entering the semi-discrete potential-energy identity; used by the
// identity audits. The flux uses the P1 boundary trace of v (bubbles vanish on
// edges).
double potential_advection(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params);
double potential_compression(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params);
double potential_flux(const Mesh2D& mesh, const Eigen::VectorXd& v, const Params& params);

}  // namespace droplet
