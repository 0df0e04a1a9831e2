#include "droplet/forms.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "droplet/element.hpp"
#include "droplet/errors.hpp"
#include "droplet/quadrature.hpp"

namespace droplet {

namespace {

SpMat from_triplets(int rows, int cols, const std::vector<Eigen::Triplet<double>>& trip) {
  SpMat m(rows, cols);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

double p1_div(const Mesh2D& mesh, const Eigen::VectorXd& w, int t, const Element& el) {
  double div = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int v = mesh.triangles[t][k];
    div += w[2 * v] * el.glam[k].x() + w[2 * v + 1] * el.glam[k].y();
  }
  return div;
}

}  // namespace

SpMat assemble_mass(const Mesh2D& mesh) {
  const DofMap dm(mesh);
  const TriRule& rule = tri_rule(6);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(32 * mesh.num_triangles());
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    double me[4][4] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) me[a][b] += rule.w[q] * n[a] * n[b];
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 2; ++c)
          trip.emplace_back(dm.udof(mesh, t, a, c), dm.udof(mesh, t, b, c), el.area * me[a][b]);
  }
  return from_triplets(dm.n_u(), dm.n_u(), trip);
}

SpMat assemble_viscous(const Mesh2D& mesh, double re) {
  if (!(re > 0.0)) throw InvalidParameterError("assemble_viscous: Re must be positive");
  const DofMap dm(mesh);
  const TriRule& rule = tri_rule(6);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(64 * mesh.num_triangles());
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    // 2 D(u):D(v)/Re -> entry (1/Re)[delta_ij g^a.g^b + g^a_j g^b_i]
    double lap[4][4] = {};
    double cross_term[4][2][4][2] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          lap[a][b] += rule.w[q] * g[a].dot(g[b]);
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              cross_term[a][i][b][j] += rule.w[q] * g[a][j] * g[b][i];
        }
    }
    const double scale = el.area / re;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 2; ++i) {
          trip.emplace_back(dm.udof(mesh, t, a, i), dm.udof(mesh, t, b, i),
                            scale * (lap[a][b] + cross_term[a][i][b][i]));
          const int j = 1 - i;
          trip.emplace_back(dm.udof(mesh, t, a, i), dm.udof(mesh, t, b, j),
                            scale * cross_term[a][i][b][j]);
        }
  }
  return from_triplets(dm.n_u(), dm.n_u(), trip);
}

SpMat assemble_pressure_div(const Mesh2D& mesh) {
  const DofMap dm(mesh);
  const TriRule& rule = tri_rule(6);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(24 * mesh.num_triangles());
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    double be[3][4][2] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 4; ++b)
          for (int j = 0; j < 2; ++j) be[a][b][j] += rule.w[q] * n[a] * g[b][j];
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 4; ++b)
        for (int j = 0; j < 2; ++j)
          trip.emplace_back(mesh.triangles[t][a], dm.udof(mesh, t, b, j), el.area * be[a][b][j]);
  }
  return from_triplets(dm.n_p(), dm.n_u(), trip);
}

SpMat assemble_d(const Mesh2D& mesh, const Eigen::VectorXd& w) {
  const DofMap dm(mesh);
  if (w.size() != 2 * dm.nv) throw InvalidParameterError("assemble_d: w must be a P1 vertex field");
  const TriRule& rule = tri_rule(6);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(32 * mesh.num_triangles());
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    const double divw = p1_div(mesh, w, t, el);
    double me[4][4] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) me[a][b] += rule.w[q] * n[a] * n[b];
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 2; ++c)
          trip.emplace_back(dm.udof(mesh, t, a, c), dm.udof(mesh, t, b, c),
                            el.area * divw * me[a][b]);
  }
  return from_triplets(dm.n_u(), dm.n_u(), trip);
}

SpMat assemble_convection_skew(const Mesh2D& mesh, const Eigen::VectorXd& u) {
  const DofMap dm(mesh);
  if (u.size() != dm.n_u())
    throw InvalidParameterError("assemble_convection_skew: advection must be a mini field");
  const TriRule& rule = tri_rule(8);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(32 * mesh.num_triangles());
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    double ce[4][4] = {};  // ce[a][b] = int N^a (u . grad N^b)
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      const Vec2 uq = field_value(mesh, dm, u, t, n);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) ce[a][b] += rule.w[q] * n[a] * uq.dot(g[b]);
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double skew = 0.5 * el.area * (ce[a][b] - ce[b][a]);
        for (int c = 0; c < 2; ++c)
          trip.emplace_back(dm.udof(mesh, t, a, c), dm.udof(mesh, t, b, c), skew);
      }
  }
  return from_triplets(dm.n_u(), dm.n_u(), trip);
}

SpMat assemble_convection(const Mesh2D& mesh, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
  return SpMat(assemble_convection_skew(mesh, u) + 0.5 * assemble_d(mesh, w));
}

SpMat assemble_conv_e1(const Mesh2D& mesh, const Eigen::VectorXd& vbar) {
  const DofMap dm(mesh);
  const TriRule& rule = tri_rule(8);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(64 * mesh.num_triangles());
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    double e1[4][4][2][2] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      const Eigen::Matrix2d gv = field_grad(mesh, dm, vbar, t, g);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) e1[a][b][i][j] += rule.w[q] * n[a] * n[b] * gv(i, j);
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            trip.emplace_back(dm.udof(mesh, t, a, i), dm.udof(mesh, t, b, j),
                              el.area * e1[a][b][i][j]);
  }
  return from_triplets(dm.n_u(), dm.n_u(), trip);
}

SpMat assemble_conv_e2(const Mesh2D& mesh, const Eigen::VectorXd& vbar) {
  const DofMap dm(mesh);
  const TriRule& rule = tri_rule(8);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(64 * mesh.num_triangles());
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    double e2[4][4][2][2] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      const Vec2 vq = field_value(mesh, dm, vbar, t, n);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) e2[a][b][i][j] += rule.w[q] * vq[i] * n[b] * g[a][j];
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            trip.emplace_back(dm.udof(mesh, t, a, i), dm.udof(mesh, t, b, j),
                              el.area * e2[a][b][i][j]);
  }
  return from_triplets(dm.n_u(), dm.n_u(), trip);
}

SpMat assemble_slip(const Mesh2D& mesh, const Expr& slip) {
  const DofMap dm(mesh);
  const EdgeRule& rule = edge_rule(4);
  std::vector<Eigen::Triplet<double>> trip;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.label != BoundaryLabel::kGamma) continue;
    const Vec2& pa = mesh.vertices[e.a];
    const Vec2& pb = mesh.vertices[e.b];
    const double len = (pb - pa).norm();
    double me[2][2] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = rule.s[q];
      const double x = (1.0 - s) * pa.x() + s * pb.x();
      const double vs = slip(x);
      if (vs < 0.0)
        throw InvalidParameterError("assemble_slip: negative friction coefficient at x = " +
                                    std::to_string(x));
      const double sh[2] = {1.0 - s, s};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) me[a][b] += rule.w[q] * vs * sh[a] * sh[b];
    }
    const int verts[2] = {e.a, e.b};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          trip.emplace_back(dm.vdof(verts[a], c), dm.vdof(verts[b], c), len * me[a][b]);
  }
  return from_triplets(dm.n_u(), dm.n_u(), trip);
}

Eigen::VectorXd assemble_surface_tension(const Mesh2D& mesh, double ca, double re) {
  if (!(ca > 0.0 && re > 0.0))
    throw InvalidParameterError("assemble_surface_tension: Ca, Re must be positive");
  const DofMap dm(mesh);
  const double coef = 1.0 / (ca * re);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dm.n_u());
  const std::vector<int> chain = sigma_chain(mesh);
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const int a = chain[k], b = chain[k + 1];
    const Vec2 tau = (mesh.vertices[b] - mesh.vertices[a]).normalized();
    for (int c = 0; c < 2; ++c) {
      f[dm.vdof(b, c)] += coef * tau[c];
      f[dm.vdof(a, c)] -= coef * tau[c];
    }
  }
  return f;
}

Eigen::VectorXd assemble_contact_line(const Mesh2D& mesh, const Expr& theta_s, double ca,
                                      double re) {
  const DofMap dm(mesh);
  const double coef = 1.0 / (ca * re);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dm.n_u());
  const int vl = mesh.contact_vertices[0], vr = mesh.contact_vertices[1];
  // m_Gamma = (-1, 0) at the left contact, (1, 0) at the right.
  f[dm.vdof(vl, 0)] -= coef * std::cos(theta_s(mesh.vertices[vl].x()));
  f[dm.vdof(vr, 0)] += coef * std::cos(theta_s(mesh.vertices[vr].x()));
  return f;
}

Eigen::VectorXd assemble_gravity_boundary(const Mesh2D& mesh, double grav_coef, double alpha) {
  const DofMap dm(mesh);
  const Vec2 k(-std::sin(alpha), std::cos(alpha));
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dm.n_u());
  if (grav_coef == 0.0) return f;
  const EdgeRule& rule = edge_rule(3);
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.label != BoundaryLabel::kSigma) continue;
    const Vec2& pa = mesh.vertices[e.a];
    const Vec2& pb = mesh.vertices[e.b];
    const Vec2 nlen = perp(pb - pa);  // outward normal times edge length
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = rule.s[q];
      const double phi = grav_coef * k.dot((1.0 - s) * pa + s * pb);
      const double sh[2] = {1.0 - s, s};
      const int verts[2] = {e.a, e.b};
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
          f[dm.vdof(verts[a], c)] += rule.w[q] * phi * sh[a] * nlen[c];
    }
  }
  return f;
}

std::vector<double> triangle_kinetic(const Mesh2D& mesh, const Eigen::VectorXd& v) {
  const DofMap dm(mesh);
  const TriRule& rule = tri_rule(6);
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  std::vector<double> out(mesh.num_triangles(), 0.0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      acc += rule.w[q] * 0.5 * field_value(mesh, dm, v, t, n).squaredNorm();
    }
    out[t] = el.area * acc;
  }
  return out;
}

double kinetic_energy(const Mesh2D& mesh, const Eigen::VectorXd& v) {
  const std::vector<double> tk = triangle_kinetic(mesh, v);
  double ek = 0.0;
  for (double e : tk) ek += e;
  return ek;
}

double viscous_power(const Mesh2D& mesh, const Eigen::VectorXd& v, double re) {
  const DofMap dm(mesh);
  const TriRule& rule = tri_rule(6);
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  double pv = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      const Eigen::Matrix2d gv = field_grad(mesh, dm, v, t, g);
      acc += rule.w[q] * (gv + gv.transpose()).squaredNorm();
    }
    pv += el.area * acc / (2.0 * re);
  }
  return pv;
}

double friction_power(const Mesh2D& mesh, const Eigen::VectorXd& v, const Expr& slip) {
  const DofMap dm(mesh);
  const EdgeRule& rule = edge_rule(4);
  double pf = 0.0;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.label != BoundaryLabel::kGamma) continue;
    const Vec2& pa = mesh.vertices[e.a];
    const Vec2& pb = mesh.vertices[e.b];
    const Vec2 va(v[dm.vdof(e.a, 0)], v[dm.vdof(e.a, 1)]);
    const Vec2 vb(v[dm.vdof(e.b, 0)], v[dm.vdof(e.b, 1)]);
    const double len = (pb - pa).norm();
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = rule.s[q];
      const double x = (1.0 - s) * pa.x() + s * pb.x();
      acc += rule.w[q] * slip(x) * ((1.0 - s) * va + s * vb).squaredNorm();
    }
    pf += len * acc;
  }
  return pf;
}

double half_vsq_divw(const Mesh2D& mesh, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  const DofMap dm(mesh);
  const TriRule& rule = tri_rule(6);
  std::array<double, 4> n;
  std::array<Vec2, 4> g;
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Element el(mesh, t);
    const double divw = p1_div(mesh, w, t, el);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      el.basis(rule.bary[q], n, g);
      acc += rule.w[q] * 0.5 * field_value(mesh, dm, v, t, n).squaredNorm();
    }
    total += el.area * divw * acc;
  }
  return total;
}

double potential_energy(const Mesh2D& mesh, double grav_coef, double alpha) {
  if (grav_coef == 0.0) return 0.0;
  const Vec2 k(-std::sin(alpha), std::cos(alpha));
  double ep = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec2& a = mesh.vertices[tri[0]];
    const Vec2& b = mesh.vertices[tri[1]];
    const Vec2& c = mesh.vertices[tri[2]];
    ep += tri_area(a, b, c) * grav_coef * k.dot((a + b + c) / 3.0);
  }
  return ep;
}

Vec2 center_of_mass_velocity(const Mesh2D& mesh, const Eigen::VectorXd& v) {
  const DofMap dm(mesh);
  const EdgeRule& rule = edge_rule(3);
  Vec2 total = Vec2::Zero();
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const Vec2& pa = mesh.vertices[e.a];
    const Vec2& pb = mesh.vertices[e.b];
    const Vec2 nlen = perp(pb - pa);
    const Vec2 va(v[dm.vdof(e.a, 0)], v[dm.vdof(e.a, 1)]);
    const Vec2 vb(v[dm.vdof(e.b, 0)], v[dm.vdof(e.b, 1)]);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = rule.s[q];
      const Vec2 x = (1.0 - s) * pa + s * pb;
      const double vn = ((1.0 - s) * va + s * vb).dot(nlen);
      total += rule.w[q] * vn * x;
    }
  }
  return total / measures(mesh).area;
}

Eigen::VectorXd extend_p1_to_mini(const DofMap& dm, const Eigen::VectorXd& w) {
  if (w.size() != 2 * dm.nv)
    throw InvalidParameterError("extend_p1_to_mini: expected a P1 vertex field");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dm.n_u());
  out.head(2 * dm.nv) = w;
  return out;
}

}  // namespace droplet
