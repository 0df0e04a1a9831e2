#include <cmath>
#include <doctest.h>
#include <vector>

#include "droplet/errors.hpp"
#include "droplet/geometry.hpp"
#include "droplet/params.hpp"
#include "droplet/young_laplace.hpp"

using namespace droplet;

namespace {

// Shape constants for theta_s = 3pi/4, V = 2.85, frozen from an independent
// quadrature/root-finding implementation of the same parametric profile.
struct Frozen {
  double bo, shape_constant, apex, half_width;
};
const Frozen kFrozen[] = {
    {0.2, 3.03412808735611, 1.60643255488994, 0.811000152303049},
    {0.4, 1.82524404396028, 1.52702588836476, 0.897264079165378},
    {0.8, 1.27013330815239, 1.40152176279146, 1.03848997319721},
};

}  // namespace

TEST_SUITE("young_laplace") {

TEST_CASE("matches the frozen reference constants") {
  for (const Frozen& f : kFrozen) {
    const YLProfile p = young_laplace(f.bo, 3.0 * kPi / 4.0, 2.85);
    CHECK(std::abs(p.shape_constant - f.shape_constant) <= 1e-9);
    CHECK(std::abs(p.apex_height - f.apex) <= 1e-6);
    CHECK(std::abs(p.half_width - f.half_width) <= 1e-6);
    CHECK(p.capillary == doctest::Approx(1.0 / std::sqrt(f.bo)).epsilon(1e-13));
  }
}

TEST_CASE("profile encloses the requested area") {
  for (double bo : {0.2, 0.8}) {
    const YLProfile p = young_laplace(bo, 3.0 * kPi / 4.0, 2.85);
    CHECK(p.samples.size() >= 512);
    // Contacts sit on the wall, so the implicit closing chord adds no area.
    CHECK(std::abs(std::abs(polygon_area(p.samples)) - 2.85) <= 1e-8);
    CHECK(std::abs(p.samples.front().y()) <= 1e-12);
    CHECK(std::abs(p.samples.back().y()) <= 1e-12);
  }
}

TEST_CASE("profile is symmetric and gravity flattens the apex") {
  const YLProfile p = young_laplace(0.4, 3.0 * kPi / 4.0, 2.85);
  const std::size_t n = p.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(p.samples[i].x() + p.samples[n - 1 - i].x()) <= 1e-9);
    CHECK(std::abs(p.samples[i].y() - p.samples[n - 1 - i].y()) <= 1e-9);
  }
  CHECK(kFrozen[0].apex > kFrozen[1].apex);
  CHECK(kFrozen[1].apex > kFrozen[2].apex);
  CHECK(kFrozen[0].half_width < kFrozen[1].half_width);  // flatter means wider
  CHECK(kFrozen[1].half_width < kFrozen[2].half_width);
}

TEST_CASE("weak gravity approaches the circular cap") {
  const double theta = 3.0 * kPi / 4.0;
  const double volume = 2.85;
  const YLProfile p = young_laplace(1e-3, theta, volume);
  const double radius = std::sqrt(volume / cap_area(theta));
  std::vector<Vec2> circle;
  for (int i = 0; i <= 2048; ++i) {
    const double psi = -theta + 2.0 * theta * i / 2048;
    circle.emplace_back(radius * std::sin(psi), radius * (std::cos(psi) - std::cos(theta)));
  }
  CHECK(profile_distance(p.samples, circle) <= 5e-3);
}

TEST_CASE("endpoint tangent meets the wall at theta_s") {
  const double theta = 3.0 * kPi / 4.0;
  const YLProfile p = young_laplace(0.4, theta, 2.85);
  const std::size_t n = p.samples.size();
  const Vec2 m_sigma = (p.samples[n - 1] - p.samples[n - 2]).normalized();
  const double angle = std::acos(std::clamp(m_sigma.dot(Vec2(1.0, 0.0)), -1.0, 1.0));
  CHECK(std::abs(angle - theta) <= 1e-3);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(young_laplace(0.0, kPi / 2, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(young_laplace(0.2, 0.0, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(young_laplace(0.2, kPi / 2, -1.0), InvalidParameterError);
  // Area far outside the attainable range for the shape-constant bracket.
  CHECK_THROWS_AS(young_laplace(0.2, kPi / 2, 1e12), InvalidParameterError);
}

TEST_CASE("profile distance metric") {
  const YLProfile p = young_laplace(0.2, 3.0 * kPi / 4.0, 2.85);
  CHECK(profile_distance(p.samples, p.samples) == 0.0);

  std::vector<Vec2> shifted = p.samples;
  for (Vec2& x : shifted) x.y() += 0.01;
  CHECK(profile_distance(p.samples, shifted) == doctest::Approx(0.01).epsilon(1e-4));

  CHECK_THROWS_AS(profile_distance({}, p.samples), InvalidParameterError);
}

TEST_CASE("contact midpoint alignment") {
  const std::vector<Vec2> line = {{1.0, 0.0}, {2.0, 0.7}, {3.0, 0.0}};
  const std::vector<Vec2> aligned = align_contact_midpoint(line);
  CHECK(aligned.front().x() == doctest::Approx(-1.0));
  CHECK(aligned.back().x() == doctest::Approx(1.0));
  CHECK(aligned[1].y() == doctest::Approx(0.7));
  CHECK_THROWS_AS(align_contact_midpoint({}), InvalidParameterError);
}

}  // TEST_SUITE
