#pragma once

#include <vector>

#include "droplet/geometry.hpp"

namespace droplet {

// Closed-form steady droplet profile on a horizontal wall under gravity:
//   x(th) = +- (sqrt(2) a / 2) int_0^th cos(xi)/sqrt(A - cos(xi)) dxi
//   y(th) = -sqrt(2) a sqrt(A - cos(th)),   a^2 = 1/Bo,
// with A fixed by the enclosed area. Samples run left contact -> apex ->
// right contact, shifted so the contacts sit at y = 0 and centered at x = 0.
struct YLProfile {
  std::vector<Vec2> samples;
  double shape_constant = 0.0;  // A
  double capillary = 0.0;       // a
  double apex_height = 0.0;
  double half_width = 0.0;
};

// Solves the monotone area map for A (log-spaced scan + bisection), then
// samples 4097 points per branch. Enclosed area of the returned polyline
// (closed along the wall) matches `volume` within 1e-8. Throws
// InvalidParameterError when no A in (1 + 1e-9, 1e6) attains the area.
YLProfile young_laplace(double bo, double theta_s, double volume);

// Symmetric Hausdorff distance between two polylines (max over the points of
// either of the distance to the other, measured against segments). No
// alignment is performed here; translate the numeric profile first.
double profile_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

// Translate a polyline so the midpoint of its two endpoints lands at the
// origin; used to center a numeric interface before comparing shapes.
std::vector<Vec2> align_contact_midpoint(const std::vector<Vec2>& polyline);

}  // namespace droplet
