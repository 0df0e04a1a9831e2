#pragma once

#include <Eigen/Dense>

#include "droplet/expression.hpp"
#include "droplet/mesh.hpp"

namespace droplet {

// One mesh motion: x_next = x_prev + dt * w vertexwise, with w a P1 vector
// field (component c of vertex i at w[2*i+c]). The in-between configuration is
// the affine reconstruction x(t) = x_prev + t*w, which every time quadrature
// below assumes exactly.
struct AleStep {
  Mesh2D mesh_prev;
  Mesh2D mesh_next;
  Eigen::VectorXd w;
  double dt = 0.0;
};

// Builds the step by moving mesh_prev; the vertexwise invariant holds by
// construction. Throws TangledMeshError if an element inverts on the way.
AleStep make_ale_step(const Mesh2D& mesh_prev, const Eigen::VectorXd& w, double dt);

// Verifies |x_next - x_prev - dt*w| <= 1e-12 vertexwise and matching topology.
void check_ale_step(const AleStep& step);

// P1 harmonic extension of prescribed boundary vertex values into the
// interior, one Laplace solve per component. `boundary_values` is a 2*nv
// vector whose interior entries are ignored. Values at wall vertices must have
// |y-component| <= 1e-12; it is snapped to exactly zero.
Eigen::VectorXd mesh_velocity(const Mesh2D& mesh, const Eigen::VectorXd& boundary_values);

// Largest componentwise excursion of an interior value outside the range of
// the boundary values (0 when the discrete maximum principle holds). Moved
// meshes are not always Delaunay, so this is reported, not enforced.
double max_principle_violation(const Mesh2D& mesh, const Eigen::VectorXd& w);

// Exact-in-time integral of int psi div w along the motion, psi a P1 scalar
// frozen on the moving mesh. Per triangle the Jacobian of x(t) is
// J(t) = 1 + t tr(G) + t^2 det(G) with G = grad w, so the time integral is the
// polynomial increment J(dt) - 1. Algebraically equals
// transported_integral_difference; the pair is the volume conservation audit.
double scl_volume_integral(const AleStep& step, const Eigen::VectorXd& psi);
double transported_integral_difference(const AleStep& step, const Eigen::VectorXd& psi);

// Same exact-in-time quadrature for psi = (1/2)|v|^2 with v a mini-space field
// frozen on the moving mesh. Equals (1/2) v^T (M_next - M_prev) v.
double scl_kinetic_integral(const AleStep& step, const Eigen::VectorXd& v);

// Signed defect of the trapezoid (Crank-Nicolson) time quadrature of
// coef * int_Sigma div_Sigma w dS against the exact length increment
// coef * (|Sigma_next| - |Sigma_prev|). O(dt^3) per step.
double scl_surface_residual(const AleStep& step, double coef);

// Trapezoid quadrature of the contact-vertex power sum_cl cos(theta_s)/(Ca Re)
// m_Gamma . w along the step.
double cn_contact_power(const AleStep& step, const Expr& theta_s, double ca, double re);

// Signed defect of cn_contact_power against the exact wetting-energy change,
// the latter integrated between the moving contact abscissae by adaptive
// quadrature. O(dt^3) per step for smooth theta_s.
double scl_contact_residual(const AleStep& step, const Expr& theta_s, double ca, double re);

// Exact-in-time integral of oint over the whole boundary of Phi w.n dS along
// the motion, Phi(x) = grav_coef * k(alpha).x. Equals the potential-energy
// increment. Gamma edges contribute zero whenever the wall y-velocity is zero.
double scl_gravity_integral(const AleStep& step, double grav_coef, double alpha);

// Exact-in-time impulse of the gravity boundary term on each velocity test
// function: entry i is the time integral of oint Phi N_i.n dS along the
// motion. Pairing with v whose boundary trace equals w reproduces
// scl_gravity_integral.
Eigen::VectorXd gravity_impulse(const AleStep& step, double grav_coef, double alpha);

}  // namespace droplet
