#include "droplet/quadrature.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "droplet/geometry.hpp"

namespace droplet {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

TriRule build_tri_rule(int degree) {
  // Duffy map from the unit square: xi = u*(1-v), eta = v, Jacobian (1-v).
  // A degree-p integrand becomes degree <= p+1 per direction, so n >= (p+2)/2.
  const int n = (degree + 3) / 2;
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  TriRule rule;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (gx[i] + 1.0);
    const double wu = 0.5 * gw[i];
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (gx[j] + 1.0);
      const double wv = 0.5 * gw[j];
      const double xi = u * (1.0 - v);
      const double eta = v;
      rule.bary.push_back({1.0 - xi - eta, xi, eta});
      // Factor 2 rescales from the reference area 1/2 so weights sum to 1.
      rule.w.push_back(2.0 * wu * wv * (1.0 - v));
    }
  }
  return rule;
}

}  // namespace

const TriRule& tri_rule(int degree) {
  static std::map<int, TriRule> cache;
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, build_tri_rule(degree)).first;
  return it->second;
}

const EdgeRule& edge_rule(int npoints) {
  static std::map<int, EdgeRule> cache;
  auto it = cache.find(npoints);
  if (it == cache.end()) {
    std::vector<double> gx, gw;
    gauss_legendre(npoints, gx, gw);
    EdgeRule rule;
    for (int i = 0; i < npoints; ++i) {
      rule.s.push_back(0.5 * (gx[i] + 1.0));
      rule.w.push_back(0.5 * gw[i]);
    }
    it = cache.emplace(npoints, std::move(rule)).first;
  }
  return it->second;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  struct Impl {
    const std::function<double(double)>& f;
    double recurse(double a, double fa, double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return recurse(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
             recurse(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
    }
  };
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  Impl impl{f};
  return impl.recurse(a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace droplet
