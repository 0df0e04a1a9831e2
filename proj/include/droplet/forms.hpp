#pragma once

#include <Eigen/Sparse>

#include "droplet/dofmap.hpp"
#include "droplet/expression.hpp"
#include "droplet/mesh.hpp"

namespace droplet {

using SpMat = Eigen::SparseMatrix<double>;

// Single-configuration forms of the weak formulation, assembled on a given
// mesh with the mini element [P1+bubble]^2 x P1. All velocity matrices are
// n_u x n_u in the DofMap layout; the divergence block is n_p x n_u.
//
// Quadrature is exact for every polynomial integrand here: degree 6 on
// triangles for quadratic-in-basis integrands (bubble x bubble), degree 8
// where a coefficient field in the mini space multiplies a basis pair.

// m(phi, v) = int phi . v
SpMat assemble_mass(const Mesh2D& mesh);

// a(phi, v) = int (1/2) D(phi) : (1/Re) D(v), D(v) = grad v + grad v^T
SpMat assemble_viscous(const Mesh2D& mesh, double re);

// b(phi, p) = int p div phi, rows: pressure dofs, cols: velocity dofs
SpMat assemble_pressure_div(const Mesh2D& mesh);

// d(phi, v; w) = int phi . v div w, with w a P1 vertex field (2*nv)
SpMat assemble_d(const Mesh2D& mesh, const Eigen::VectorXd& w);

// Skew part (1/2)[c(phi,v;u) - c(v,phi;u)] for advection u in the mini space
SpMat assemble_convection_skew(const Mesh2D& mesh, const Eigen::VectorXd& u);

// Stabilized trilinear operator c~ = skew + (1/2) d(phi,v;w); u = v_adv - w
// extended to the mini space by the caller, w a P1 vertex field.
SpMat assemble_convection(const Mesh2D& mesh, const Eigen::VectorXd& u, const Eigen::VectorXd& w);

// Newton blocks of the skew convection at state vbar (mini coefficients):
// E1[(a,i),(b,j)] = int N^a N^b d_j vbar_i  (advection perturbation in c(phi,v;u))
// E2[(a,i),(b,j)] = int vbar_i N^b d_j N^a  (advection perturbation in c(v,phi;u))
SpMat assemble_conv_e1(const Mesh2D& mesh, const Eigen::VectorXd& vbar);
SpMat assemble_conv_e2(const Mesh2D& mesh, const Eigen::VectorXd& vbar);

// r(phi, v) = int_Gamma varsigma(x) phi . v, supported on wall-vertex dofs.
// Throws InvalidParameterError when varsigma evaluates negative at a
// quadrature point.
SpMat assemble_slip(const Mesh2D& mesh, const Expr& slip);

// f_st(phi) = (1/(Ca Re)) int_Sigma div_Sigma phi: per edge the exact value
// tau . (phi_end - phi_start) with tau the unit tangent.
Eigen::VectorXd assemble_surface_tension(const Mesh2D& mesh, double ca, double re);

// f_cl(phi) = (1/(Ca Re)) sum over the two contact vertices of
// cos(theta_s(x)) m_Gamma . phi, with m_Gamma the outward wall conormal.
Eigen::VectorXd assemble_contact_line(const Mesh2D& mesh, const Expr& theta_s, double ca,
                                      double re);

// f_gs(phi) = int_Sigma Phi phi . n, Phi(x) = grav_coef * k(alpha) . x with
// k = (-sin alpha, cos alpha) and grav_coef = 1/Fr^2 = Bo.
Eigen::VectorXd assemble_gravity_boundary(const Mesh2D& mesh, double grav_coef, double alpha);

// Scalar evaluations by direct quadrature (independent loops from the
// matrix assemblies; used for energies and audit cross-checks).
double kinetic_energy(const Mesh2D& mesh, const Eigen::VectorXd& v);
// per-triangle int_K (1/2)|v|^2; kinetic_energy is the sum of these
std::vector<double> triangle_kinetic(const Mesh2D& mesh, const Eigen::VectorXd& v);
double viscous_power(const Mesh2D& mesh, const Eigen::VectorXd& v, double re);
double friction_power(const Mesh2D& mesh, const Eigen::VectorXd& v, const Expr& slip);
// int (1/2)|v|^2 div w, w a P1 vertex field
double half_vsq_divw(const Mesh2D& mesh, const Eigen::VectorXd& v, const Eigen::VectorXd& w);
// int_Omega Phi dx (exact: Phi linear)
double potential_energy(const Mesh2D& mesh, double grav_coef, double alpha);
// boundary integral (1/|Omega|) oint x (v.n) dS
Vec2 center_of_mass_velocity(const Mesh2D& mesh, const Eigen::VectorXd& v);

// Embed a P1 vertex field (2*nv) into the mini space (bubble part zero).
Eigen::VectorXd extend_p1_to_mini(const DofMap& dm, const Eigen::VectorXd& w);

}  // namespace droplet
