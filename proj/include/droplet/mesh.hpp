#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "droplet/geometry.hpp"

namespace droplet {

// Boundary decomposition of a droplet cross-section: Sigma is the capillary
// (liquid-gas) interface, Gamma the wetted wall segment on the x-axis.
enum class BoundaryLabel { kSigma, kGamma };

struct BoundaryEdge {
  int a, b;  // oriented CCW: interior of the domain lies left of a -> b
  BoundaryLabel label;
};

// Conforming triangulation of a droplet on a flat wall.
//
// Invariants (checked by validate()):
//  - triangles are CCW with strictly positive area;
//  - boundary_edges form one closed CCW polyline in which the Gamma edges and
//    Sigma edges each form a single connected run;
//  - Gamma vertices (including both contact vertices) satisfy |y| <= 1e-12;
//  - each contact vertex is incident to exactly one Sigma and one Gamma edge.
struct Mesh2D {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;  // stored in CCW loop order
  std::array<int, 2> contact_vertices{-1, -1};  // {left, right} by x

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
};

struct MeshQuality {
  double edge_ratio;  // max over triangles of longest/shortest edge
  double aspect;      // max over triangles of h_max / (2*sqrt(3)*inradius); 1 for equilateral
};

// Discrete boundary geometry. Arrays over boundary edges follow
// mesh.boundary_edges order; vertex arrays follow the CCW boundary loop.
struct BoundaryFrame {
  std::vector<Vec2> edge_normals;       // outward unit normal per boundary edge
  std::vector<int> boundary_vertices;   // CCW loop order
  std::vector<Vec2> vertex_normals;     // edge-length-weighted, renormalized
  Vec2 conormal_sigma_left, conormal_sigma_right;  // outward conormal of Sigma at contacts
  Vec2 conormal_gamma_left, conormal_gamma_right;  // outward conormal of Gamma: (-1,0)/(1,0)
};

struct Measures {
  double area;
  double sigma_length;
  double gamma_length;
};

// Throws GeometryError when any Mesh2D invariant fails.
void validate(const Mesh2D& mesh);

// Circular-cap droplet of unit radius of curvature with contact angle theta in (0, pi):
// contact points (+-sin(theta), 0), apex (0, 1 - cos(theta)), target mesh size h.
// Exact cross-section area of the cap is theta - sin(theta)cos(theta).
Mesh2D build_initial_cap(double theta, double h);

// Droplet mesh bounded above by the given interface polyline (ordered from the left
// contact point to the right, both endpoints on y = 0) and below by the wall.
// The polyline is resampled to arclength spacing ~h before triangulation.
Mesh2D mesh_from_boundary(const std::vector<Vec2>& sigma_polyline, double h);

BoundaryFrame boundary_frame(const Mesh2D& mesh);

// (left, right) contact angles from the discrete conormals: cos(theta) = m_Sigma . m_Gamma.
std::pair<double, double> contact_angles(const Mesh2D& mesh);

// Vertex update x + dt*w for a P1 velocity w (size 2*nv, component c of vertex i
// at w[2*i+c]). Throws TangledMeshError when any triangle area becomes
// non-positive. Gamma vertices must have zero y-velocity.
Mesh2D move_mesh(const Mesh2D& mesh, const Eigen::VectorXd& w, double dt);

MeshQuality mesh_quality(const Mesh2D& mesh);

Measures measures(const Mesh2D& mesh);

// Ordered Sigma polyline from left contact vertex to right contact vertex.
std::vector<int> sigma_chain(const Mesh2D& mesh);
// Ordered Gamma polyline from left contact vertex to right contact vertex.
std::vector<int> gamma_chain(const Mesh2D& mesh);

// Remeshing: resample the boundary arclength-uniformly (contact vertices pinned),
// retriangulate the interior, interpolate fields. v is a mini-element velocity
// vector (2*(nv+nt)), p a P1 pressure (nv). Returns changed=false (inputs passed
// through) when quality is within (edge_ratio <= q_edge, aspect <= q_aspect).
struct AdaptResult {
  Mesh2D mesh;
  Eigen::VectorXd v, p;
  bool changed;
};
AdaptResult adapt_mesh(const Mesh2D& mesh, const Eigen::VectorXd& v, const Eigen::VectorXd& p,
                       double h_target, double q_edge = 3.0, double q_aspect = 4.0);

// Evaluate a mini-element velocity field at an arbitrary point of the mesh
// (point-location by triangle scan). Used by remesh transfer and tests.
Vec2 eval_velocity_at(const Mesh2D& mesh, const Eigen::VectorXd& v, const Vec2& point);
double eval_pressure_at(const Mesh2D& mesh, const Eigen::VectorXd& p, const Vec2& point);

// Legacy ASCII VTK snapshot with point-data velocity (P1 part) and pressure.
void write_vtk(const std::string& path, const Mesh2D& mesh, const Eigen::VectorXd* v = nullptr,
               const Eigen::VectorXd* p = nullptr);

// Interface polyline CSV: header x,y,label with label in {sigma, gamma}.
void write_interface_csv(const std::string& path, const Mesh2D& mesh);

}  // namespace droplet
