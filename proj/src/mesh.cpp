#include "droplet/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "droplet/delaunay.hpp"
#include "droplet/errors.hpp"

namespace droplet {

namespace {

constexpr double kWallTol = 1e-12;

// Deterministic tiny jitter in (-1, 1) from an integer key; breaks the exact
// cocircularity of lattice interior points.
double jitter(int key) {
  unsigned long long x = static_cast<unsigned long long>(key) * 6364136223846793005ull + 1442695040888963407ull;
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  return 2.0 * (static_cast<double>(x >> 11) / 9007199254740992.0) - 1.0;
}

// Uniform resample of an open polyline at ~spacing h; endpoints preserved.
std::vector<Vec2> resample_polyline(const std::vector<Vec2>& pts, double h) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += (pts[i + 1] - pts[i]).norm();
  const int n = std::max(2, static_cast<int>(std::lround(total / h)));
  std::vector<Vec2> out;
  out.reserve(n + 1);
  out.push_back(pts.front());
  double walked = 0.0;
  std::size_t seg = 0;
  double seg_used = 0.0;
  for (int k = 1; k < n; ++k) {
    const double want = k * (total / n);
    while (seg + 1 < pts.size()) {
      const double seg_len = (pts[seg + 1] - pts[seg]).norm();
      if (walked + (seg_len - seg_used) >= want - 1e-15) break;
      walked += seg_len - seg_used;
      seg_used = 0.0;
      ++seg;
    }
    const double seg_len = (pts[seg + 1] - pts[seg]).norm();
    const double need = want - walked;
    const double t = (seg_used + need) / seg_len;
    out.push_back(pts[seg] + t * (pts[seg + 1] - pts[seg]));
    walked += need;
    seg_used += need;
  }
  out.push_back(pts.back());
  return out;
}

// Build a droplet mesh from explicit boundary samples. sigma_pts runs from the
// left contact point to the right contact point (exclusive endpoints are the
// interface interior); gamma_xs are wall abscissae left -> right including both
// contacts. Interior points come from a trimmed hexagonal lattice.
Mesh2D triangulate_droplet(const std::vector<Vec2>& sigma_pts, const std::vector<double>& gamma_xs,
                           double h) {
  if (sigma_pts.size() < 3) throw GeometryError("interface polyline too short");
  if (gamma_xs.size() < 2) throw GeometryError("wall polyline too short");

  // Boundary loop CCW: wall left -> right, then interface right -> left.
  std::vector<Vec2> loop;
  for (double x : gamma_xs) loop.emplace_back(x, 0.0);
  for (std::size_t i = sigma_pts.size() - 2; i >= 1; --i) loop.push_back(sigma_pts[i]);
  const int nb = static_cast<int>(loop.size());

  std::vector<Vec2> points = loop;
  // Hexagonal lattice clipped to the polygon with a clearance from the boundary.
  Vec2 lo = loop[0], hi = loop[0];
  for (const Vec2& p : loop) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double row_h = h * std::sqrt(3.0) / 2.0;
  const double clearance = 0.62 * h;
  int key = 0;
  for (int row = 0;; ++row) {
    const double y = lo.y() + row_h * (row + 0.5);
    if (y > hi.y()) break;
    const double x0 = lo.x() + ((row % 2) ? 0.75 * h : 0.25 * h);
    for (int col = 0;; ++col) {
      const double x = x0 + col * h;
      if (x > hi.x()) break;
      Vec2 p(x + 0.02 * h * jitter(3 * key + 1), y + 0.02 * h * jitter(3 * key + 2));
      ++key;
      if (!point_in_polygon(p, loop)) continue;
      double dmin = 1e300;
      for (int i = 0; i < nb; ++i)
        dmin = std::min(dmin, point_segment_distance(p, loop[i], loop[(i + 1) % nb]));
      if (dmin < clearance) continue;
      points.push_back(p);
    }
  }

  std::vector<std::pair<int, int>> segments;
  for (int i = 0; i < nb; ++i) segments.emplace_back(i, (i + 1) % nb);

  auto triangles = constrained_delaunay(points, segments);
  smooth_interior(points, triangles, nb, 8);

  Mesh2D mesh;
  mesh.vertices = std::move(points);
  mesh.triangles = std::move(triangles);
  const int n_gamma_edges = static_cast<int>(gamma_xs.size()) - 1;
  for (int i = 0; i < nb; ++i) {
    BoundaryLabel label = (i < n_gamma_edges) ? BoundaryLabel::kGamma : BoundaryLabel::kSigma;
    mesh.boundary_edges.push_back({i, (i + 1) % nb, label});
  }
  mesh.contact_vertices = {0, n_gamma_edges};
  validate(mesh);
  return mesh;
}

}  // namespace

void validate(const Mesh2D& mesh) {
  const int nv = mesh.num_vertices();
  if (nv < 3 || mesh.triangles.empty()) throw GeometryError("mesh: too few vertices/triangles");
  for (const auto& t : mesh.triangles) {
    for (int v : t)
      if (v < 0 || v >= nv) throw GeometryError("mesh: triangle vertex out of range");
    if (tri_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]) <= 0.0)
      throw GeometryError("mesh: non-positive triangle area");
  }

  // Boundary edges of the triangulation = edges used exactly once.
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      auto key = std::minmax(t[e], t[(e + 1) % 3]);
      edge_use[{key.first, key.second}]++;
    }
  std::set<std::pair<int, int>> tri_boundary;
  for (const auto& [e, cnt] : edge_use) {
    if (cnt == 1) tri_boundary.insert(e);
    if (cnt > 2) throw GeometryError("mesh: non-manifold edge");
  }
  if (tri_boundary.size() != mesh.boundary_edges.size())
    throw GeometryError("mesh: boundary edge list does not match triangulation");

  const int ne = static_cast<int>(mesh.boundary_edges.size());
  for (int i = 0; i < ne; ++i) {
    const BoundaryEdge& e = mesh.boundary_edges[i];
    auto key = std::minmax(e.a, e.b);
    if (!tri_boundary.count({key.first, key.second}))
      throw GeometryError("mesh: labeled edge is not a triangulation boundary edge");
    // Closed loop in stored order.
    if (e.b != mesh.boundary_edges[(i + 1) % ne].a)
      throw GeometryError("mesh: boundary edges are not a closed ordered loop");
  }

  // Label runs: exactly 2 label switches around the loop (one Sigma run, one Gamma run).
  int switches = 0;
  for (int i = 0; i < ne; ++i)
    if (mesh.boundary_edges[i].label != mesh.boundary_edges[(i + 1) % ne].label) ++switches;
  if (switches != 2) throw GeometryError("mesh: Sigma/Gamma runs are not both connected");

  // Gamma on the wall.
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.label != BoundaryLabel::kGamma) continue;
    if (std::abs(mesh.vertices[e.a].y()) > kWallTol || std::abs(mesh.vertices[e.b].y()) > kWallTol)
      throw GeometryError("mesh: Gamma vertex off the wall");
  }

  // Contact vertices: label switch points, one Sigma + one Gamma edge each.
  std::set<int> switch_vertices;
  for (int i = 0; i < ne; ++i) {
    const BoundaryEdge& e0 = mesh.boundary_edges[i];
    const BoundaryEdge& e1 = mesh.boundary_edges[(i + 1) % ne];
    if (e0.label != e1.label) switch_vertices.insert(e0.b);
  }
  if (switch_vertices.size() != 2) throw GeometryError("mesh: expected exactly two contact vertices");
  for (int cv : mesh.contact_vertices)
    if (!switch_vertices.count(cv)) throw GeometryError("mesh: contact_vertices mislabeled");
  const Vec2& cl = mesh.vertices[mesh.contact_vertices[0]];
  const Vec2& cr = mesh.vertices[mesh.contact_vertices[1]];
  if (!(cl.x() < cr.x())) throw GeometryError("mesh: contact vertices not ordered left/right");
}

Mesh2D build_initial_cap(double theta, double h) {
  if (!(theta > 0.0 && theta < kPi))
    throw InvalidParameterError("cap contact angle must lie in (0, pi)");
  if (!(h > 0.0)) throw InvalidParameterError("mesh size must be positive");
  // Unit-radius circle centered at (0, -cos(theta)); the cap is its y > 0 part.
  // Interface parametrization (sin(psi), cos(psi) - cos(theta)), psi in [-theta, theta].
  const int n_arc = std::max(4, static_cast<int>(std::lround(2.0 * theta / h)));
  std::vector<Vec2> sigma;
  for (int i = 0; i <= n_arc; ++i) {
    const double psi = -theta + 2.0 * theta * i / n_arc;
    sigma.emplace_back(std::sin(psi), std::cos(psi) - std::cos(theta));
  }
  sigma.front().y() = 0.0;  // exact wall contact
  sigma.back().y() = 0.0;
  const double half_chord = std::sin(theta);
  const int n_wall = std::max(2, static_cast<int>(std::lround(2.0 * half_chord / h)));
  std::vector<double> gamma;
  for (int i = 0; i <= n_wall; ++i) gamma.push_back(-half_chord + 2.0 * half_chord * i / n_wall);
  return triangulate_droplet(sigma, gamma, h);
}

Mesh2D mesh_from_boundary(const std::vector<Vec2>& sigma_polyline, double h) {
  if (sigma_polyline.size() < 3) throw GeometryError("interface polyline too short");
  if (std::abs(sigma_polyline.front().y()) > kWallTol ||
      std::abs(sigma_polyline.back().y()) > kWallTol)
    throw GeometryError("interface endpoints must lie on the wall");
  std::vector<Vec2> sigma = resample_polyline(sigma_polyline, h);
  sigma.front().y() = 0.0;
  sigma.back().y() = 0.0;
  const double xl = sigma.front().x(), xr = sigma.back().x();
  if (!(xl < xr)) throw GeometryError("interface endpoints must be ordered left/right");
  const int n_wall = std::max(2, static_cast<int>(std::lround((xr - xl) / h)));
  std::vector<double> gamma;
  for (int i = 0; i <= n_wall; ++i) gamma.push_back(xl + (xr - xl) * i / n_wall);
  // triangulate_droplet expects sigma ordered left -> right.
  return triangulate_droplet(sigma, gamma, h);
}

std::vector<int> sigma_chain(const Mesh2D& mesh) {
  // boundary_edges run CCW: Gamma left -> right, Sigma right -> left (over the top).
  std::vector<int> chain;
  for (auto it = mesh.boundary_edges.rbegin(); it != mesh.boundary_edges.rend(); ++it) {
    if (it->label != BoundaryLabel::kSigma) continue;
    if (chain.empty()) chain.push_back(it->b);
    chain.push_back(it->a);
  }
  return chain;  // left contact -> right contact
}

std::vector<int> gamma_chain(const Mesh2D& mesh) {
  std::vector<int> chain;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.label != BoundaryLabel::kGamma) continue;
    if (chain.empty()) chain.push_back(e.a);
    chain.push_back(e.b);
  }
  return chain;
}

BoundaryFrame boundary_frame(const Mesh2D& mesh) {
  BoundaryFrame frame;
  const int ne = static_cast<int>(mesh.boundary_edges.size());
  frame.edge_normals.resize(ne);
  std::vector<double> edge_len(ne);
  for (int i = 0; i < ne; ++i) {
    const BoundaryEdge& e = mesh.boundary_edges[i];
    const Vec2 t = mesh.vertices[e.b] - mesh.vertices[e.a];
    edge_len[i] = t.norm();
    if (edge_len[i] <= 0.0) throw GeometryError("mesh: zero-length boundary edge");
    Vec2 n = perp(t) / edge_len[i];
    if (mesh.boundary_edges[i].label == BoundaryLabel::kGamma) n = Vec2(0.0, -1.0);  // exact
    frame.edge_normals[i] = n;
  }
  frame.boundary_vertices.reserve(ne);
  frame.vertex_normals.reserve(ne);
  for (int i = 0; i < ne; ++i) {
    const int prev = (i + ne - 1) % ne;
    const int v = mesh.boundary_edges[i].a;
    frame.boundary_vertices.push_back(v);
    Vec2 n = edge_len[prev] * frame.edge_normals[prev] + edge_len[i] * frame.edge_normals[i];
    const double norm = n.norm();
    if (norm <= 0.0) throw GeometryError("mesh: degenerate vertex normal");
    frame.vertex_normals.push_back(n / norm);
  }

  // Conormals at the contact vertices: unit boundary tangents pointing out of the
  // respective sub-polyline. The wall conormals are exact by construction.
  auto schain = sigma_chain(mesh);
  const int sl = schain.front(), sl_next = schain[1];
  const int sr = schain.back(), sr_prev = schain[schain.size() - 2];
  if (sl != mesh.contact_vertices[0] || sr != mesh.contact_vertices[1])
    throw GeometryError("mesh: sigma chain endpoints are not the contact vertices");
  frame.conormal_sigma_left = (mesh.vertices[sl] - mesh.vertices[sl_next]).normalized();
  frame.conormal_sigma_right = (mesh.vertices[sr] - mesh.vertices[sr_prev]).normalized();
  frame.conormal_gamma_left = Vec2(-1.0, 0.0);
  frame.conormal_gamma_right = Vec2(1.0, 0.0);
  return frame;
}

std::pair<double, double> contact_angles(const Mesh2D& mesh) {
  const BoundaryFrame f = boundary_frame(mesh);
  const double cl = std::clamp(f.conormal_sigma_left.dot(f.conormal_gamma_left), -1.0, 1.0);
  const double cr = std::clamp(f.conormal_sigma_right.dot(f.conormal_gamma_right), -1.0, 1.0);
  return {std::acos(cl), std::acos(cr)};
}

Mesh2D move_mesh(const Mesh2D& mesh, const Eigen::VectorXd& w, double dt) {
  if (w.size() != 2 * mesh.num_vertices())
    throw InvalidParameterError("move_mesh: velocity size mismatch");
  Mesh2D out = mesh;
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    out.vertices[i].x() += dt * w[2 * i];
    out.vertices[i].y() += dt * w[2 * i + 1];
  }
  for (const auto& t : out.triangles)
    if (tri_area(out.vertices[t[0]], out.vertices[t[1]], out.vertices[t[2]]) <= 0.0)
      throw TangledMeshError("move_mesh: triangle inverted or collapsed");
  for (const BoundaryEdge& e : out.boundary_edges) {
    if (e.label != BoundaryLabel::kGamma) continue;
    if (std::abs(out.vertices[e.a].y()) > kWallTol || std::abs(out.vertices[e.b].y()) > kWallTol)
      throw GeometryError("move_mesh: wall vertex left the wall");
  }
  return out;
}

MeshQuality mesh_quality(const Mesh2D& mesh) {
  MeshQuality q{1.0, 1.0};
  for (const auto& t : mesh.triangles) {
    const Vec2& a = mesh.vertices[t[0]];
    const Vec2& b = mesh.vertices[t[1]];
    const Vec2& c = mesh.vertices[t[2]];
    const double la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
    const double lmax = std::max({la, lb, lc}), lmin = std::min({la, lb, lc});
    const double area = tri_area(a, b, c);
    const double inradius = 2.0 * area / (la + lb + lc);
    q.edge_ratio = std::max(q.edge_ratio, lmax / lmin);
    q.aspect = std::max(q.aspect, lmax / (2.0 * std::sqrt(3.0) * inradius));
  }
  return q;
}

Measures measures(const Mesh2D& mesh) {
  Measures m{0.0, 0.0, 0.0};
  for (const auto& t : mesh.triangles)
    m.area += tri_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const double len = (mesh.vertices[e.b] - mesh.vertices[e.a]).norm();
    (e.label == BoundaryLabel::kSigma ? m.sigma_length : m.gamma_length) += len;
  }
  return m;
}

void write_vtk(const std::string& path, const Mesh2D& mesh, const Eigen::VectorXd* v,
               const Eigen::VectorXd* p) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  const int nv = mesh.num_vertices();
  std::fprintf(f, "# vtk DataFile Version 3.0\ndroplet snapshot\nASCII\nDATASET UNSTRUCTURED_GRID\n");
  std::fprintf(f, "POINTS %d double\n", nv);
  for (const Vec2& x : mesh.vertices) std::fprintf(f, "%.17g %.17g 0\n", x.x(), x.y());
  const int nt = mesh.num_triangles();
  std::fprintf(f, "CELLS %d %d\n", nt, 4 * nt);
  for (const auto& t : mesh.triangles) std::fprintf(f, "3 %d %d %d\n", t[0], t[1], t[2]);
  std::fprintf(f, "CELL_TYPES %d\n", nt);
  for (int i = 0; i < nt; ++i) std::fprintf(f, "5\n");
  std::fprintf(f, "POINT_DATA %d\n", nv);
  std::fprintf(f, "VECTORS velocity double\n");
  for (int i = 0; i < nv; ++i) {
    const double vx = v ? (*v)[2 * i] : 0.0;
    const double vy = v ? (*v)[2 * i + 1] : 0.0;
    std::fprintf(f, "%.17g %.17g 0\n", vx, vy);
  }
  std::fprintf(f, "SCALARS pressure double 1\nLOOKUP_TABLE default\n");
  for (int i = 0; i < nv; ++i) std::fprintf(f, "%.17g\n", p ? (*p)[i] : 0.0);
  std::fclose(f);
}

void write_interface_csv(const std::string& path, const Mesh2D& mesh) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "# interface-csv v1\nx,y,label\n");
  // Full boundary loop in CCW order, one row per vertex, labeled by the run the
  // vertex starts (contact vertices appear once, labeled by the outgoing edge).
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const Vec2& x = mesh.vertices[e.a];
    std::fprintf(f, "%.17g,%.17g,%s\n", x.x(), x.y(),
                 e.label == BoundaryLabel::kSigma ? "sigma" : "gamma");
  }
  std::fclose(f);
}

}  // namespace droplet
