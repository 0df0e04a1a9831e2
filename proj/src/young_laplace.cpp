#include "droplet/young_laplace.hpp"

#include <algorithm>
#include <cmath>

#include "droplet/errors.hpp"
#include "droplet/quadrature.hpp"

namespace droplet {

namespace {

constexpr int kBranchSamples = 4097;
constexpr double kABracketLo = 1.0 + 1e-9;
constexpr double kABracketHi = 1e6;

double profile_integral(double a_const, double theta) {
  auto f = [a_const](double xi) { return std::cos(xi) / std::sqrt(a_const - std::cos(xi)); };
  return adaptive_simpson(f, 0.0, theta);
}

// Enclosed area as a function of the shape constant; strictly decreasing.
double area_of(double a_const, double theta_s, double bo) {
  const double a2 = 1.0 / bo;
  return 2.0 * a2 *
         (std::sqrt(a_const - std::cos(theta_s)) * profile_integral(a_const, theta_s) -
          std::sin(theta_s));
}

double solve_shape_constant(double theta_s, double bo, double volume) {
  const auto residual = [&](double a_const) { return area_of(a_const, theta_s, bo) - volume; };
  // Log-spaced scan for a sign change; the area map runs from +inf at A -> 1+
  // down to 0 at A -> inf.
  const int n_scan = 256;
  double lo = kABracketLo;
  double flo = residual(lo);
  double hi = 0.0;
  bool found = false;
  for (int i = 1; i <= n_scan; ++i) {
    const double t = static_cast<double>(i) / n_scan;
    const double a_const = kABracketLo * std::pow(kABracketHi / kABracketLo, t);
    const double fa = residual(a_const);
    if (flo == 0.0) return lo;
    if ((flo > 0.0) != (fa > 0.0)) {
      hi = a_const;
      found = true;
      break;
    }
    lo = a_const;
    flo = fa;
  }
  if (!found)
    throw InvalidParameterError("young_laplace: no shape constant attains the requested area");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = residual(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

YLProfile young_laplace(double bo, double theta_s, double volume) {
  if (!(bo > 0.0)) throw InvalidParameterError("young_laplace: Bo must be positive");
  if (!(theta_s > 0.0 && theta_s < kPi))
    throw InvalidParameterError("young_laplace: theta_s outside (0, pi)");
  if (!(volume > 0.0)) throw InvalidParameterError("young_laplace: volume must be positive");

  YLProfile prof;
  prof.capillary = 1.0 / std::sqrt(bo);
  prof.shape_constant = solve_shape_constant(theta_s, bo, volume);
  const double a_const = prof.shape_constant;
  const double half = std::sqrt(2.0) * prof.capillary / 2.0;

  // Cumulative x(th) on a uniform th grid, each increment by 5-point Gauss
  // (subintervals are tiny and the integrand smooth for A > 1).
  auto f = [a_const](double xi) { return std::cos(xi) / std::sqrt(a_const - std::cos(xi)); };
  const EdgeRule& rule = edge_rule(5);
  std::vector<double> xs(kBranchSamples), ys(kBranchSamples);
  const double ycontact = std::sqrt(2.0) * prof.capillary * std::sqrt(a_const - std::cos(theta_s));
  double acc = 0.0;
  for (int i = 0; i < kBranchSamples; ++i) {
    const double th = theta_s * i / (kBranchSamples - 1);
    if (i > 0) {
      const double th_prev = theta_s * (i - 1) / (kBranchSamples - 1);
      double inc = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q)
        inc += rule.w[q] * f(th_prev + rule.s[q] * (th - th_prev));
      acc += inc * (th - th_prev);
    }
    xs[i] = half * acc;
    // y shifted so the contact (th = theta_s) sits at 0; apex at th = 0.
    ys[i] = ycontact - std::sqrt(2.0) * prof.capillary * std::sqrt(a_const - std::cos(th));
  }
  prof.apex_height = ys[0];
  prof.half_width = xs[kBranchSamples - 1];

  prof.samples.reserve(2 * kBranchSamples - 1);
  for (int i = kBranchSamples - 1; i >= 1; --i) prof.samples.emplace_back(-xs[i], ys[i]);
  for (int i = 0; i < kBranchSamples; ++i) prof.samples.emplace_back(xs[i], ys[i]);

  // Enclosed area of the polyline closed along the wall; tighten to the
  // requested value by a uniform rescale about the contact midpoint (the
  // midpoint is already x = 0, y = 0).
  const double measured = polygon_area([&] {
    std::vector<Vec2> loop(prof.samples.rbegin(), prof.samples.rend());
    return loop;  // right contact -> apex -> left contact, closed by the wall, CCW
  }());
  if (!(measured > 0.0)) throw InvalidParameterError("young_laplace: degenerate profile");
  const double scale = std::sqrt(volume / measured);
  for (Vec2& p : prof.samples) p *= scale;
  prof.apex_height *= scale;
  prof.half_width *= scale;
  if (std::abs(scale - 1.0) > 1e-6)
    throw InvalidParameterError("young_laplace: area enforcement drifted beyond quadrature error");
  return prof;
}

double profile_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw InvalidParameterError("profile_distance: polylines need at least two points");
  auto one_sided = [](const std::vector<Vec2>& pts, const std::vector<Vec2>& line) {
    double worst = 0.0;
    for (const Vec2& p : pts) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < line.size(); ++i)
        best = std::min(best, point_segment_distance(p, line[i], line[i + 1]));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

std::vector<Vec2> align_contact_midpoint(const std::vector<Vec2>& polyline) {
  if (polyline.size() < 2)
    throw InvalidParameterError("align_contact_midpoint: polyline needs at least two points");
  const Vec2 mid = 0.5 * (polyline.front() + polyline.back());
  std::vector<Vec2> out = polyline;
  for (Vec2& p : out) p -= mid;
  return out;
}

}  // namespace droplet
