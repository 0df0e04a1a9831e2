#pragma once

#include <vector>

#include "droplet/mesh.hpp"

namespace droplet {

// Mini-element dof layout. Velocity: two components per vertex followed by two
// components per triangle bubble; pressure: one per vertex. In the coupled
// saddle system pressure dofs sit after all velocity dofs.
struct DofMap {
  int nv = 0;
  int nt = 0;

  DofMap() = default;
  explicit DofMap(const Mesh2D& mesh) : nv(mesh.num_vertices()), nt(mesh.num_triangles()) {}

  int n_u() const { return 2 * (nv + nt); }
  int n_p() const { return nv; }
  int n_total() const { return n_u() + n_p(); }

  int vdof(int vertex, int comp) const { return 2 * vertex + comp; }
  int bdof(int tri, int comp) const { return 2 * (nv + tri) + comp; }
  int pdof(int vertex) const { return n_u() + vertex; }

  // Velocity dof of local basis function a (0..2 vertex, 3 bubble) of triangle t.
  int udof(const Mesh2D& mesh, int t, int a, int comp) const {
    return a < 3 ? vdof(mesh.triangles[t][a], comp) : bdof(t, comp);
  }

  // Constrained velocity dofs: y-components at wall vertices (v.n = 0 on Gamma,
  // the wall is the x-axis; bubbles vanish on edges so the P1 trace decides).
  std::vector<int> dirichlet_dofs(const Mesh2D& mesh) const {
    std::vector<bool> on_wall(nv, false);
    for (const BoundaryEdge& e : mesh.boundary_edges) {
      if (e.label != BoundaryLabel::kGamma) continue;
      on_wall[e.a] = true;
      on_wall[e.b] = true;
    }
    std::vector<int> dofs;
    for (int v = 0; v < nv; ++v)
      if (on_wall[v]) dofs.push_back(vdof(v, 1));
    return dofs;
  }
};

}  // namespace droplet
