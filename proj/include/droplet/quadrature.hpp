#pragma once

#include <array>
#include <vector>

namespace droplet {

// Triangle rule in barycentric coordinates. Weights sum to 1, so
//   integral over K of f  ~  area(K) * sum_q w[q] * f(x(bary[q])).
// Rules are built by Duffy-collapsed tensor Gauss-Legendre and are exact for all
// polynomials up to the requested degree; every weight is positive.
struct TriRule {
  std::vector<std::array<double, 3>> bary;
  std::vector<double> w;
  std::size_t size() const { return w.size(); }
};

// Cached rule exact for polynomials of total degree <= degree.
const TriRule& tri_rule(int degree);

// Gauss-Legendre rule on [0, 1]; weights sum to 1. Exact for degree <= 2n-1.
struct EdgeRule {
  std::vector<double> s;
  std::vector<double> w;
  std::size_t size() const { return w.size(); }
};

const EdgeRule& edge_rule(int npoints);

}  // namespace droplet
