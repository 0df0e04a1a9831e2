#include <cmath>
#include <doctest.h>

#include "droplet/errors.hpp"
#include "droplet/geometry.hpp"
#include "droplet/params.hpp"

using namespace droplet;

TEST_SUITE("params") {

TEST_CASE("derived groups") {
  Params p;
  p.la = 100.0;
  p.bo = 0.3;
  p.theta_s = Expr::parse("pi/2");
  CHECK(p.re() == doctest::Approx(10.0));
  CHECK(p.ca() == doctest::Approx(0.1));
  CHECK(p.grav_coef() == doctest::Approx(0.3));
  // The capillary velocity scale makes Ca*Re = 1 for every La.
  for (double la : {0.5, 1.0, 119520.0}) {
    p.la = la;
    CHECK(p.st_coef() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("cap area closed form") {
  CHECK(cap_area(kPi / 2) == doctest::Approx(kPi / 2));
  CHECK(cap_area(3 * kPi / 4) == doctest::Approx(3 * kPi / 4 + 0.5));
  CHECK(cap_area(3 * kPi / 4) == doctest::Approx(2.8562).epsilon(1e-4));
  CHECK(cap_area(5 * kPi / 6) == doctest::Approx(5 * kPi / 6 + std::sqrt(3.0) / 4));
}

TEST_CASE("nondimensionalization of a water droplet") {
  // rho = 1000, mu = 1e-3, gamma = 0.072, g = 9.81, cap radius L = 1.66e-3.
  const double theta = kPi / 2;
  const double length = 1.66e-3;
  const double volume = length * length * cap_area(theta);
  const Params p = nondimensionalize(1000.0, 1e-3, 0.072, 9.81, volume, theta);
  CHECK(p.bo == doctest::Approx(0.3754505).epsilon(1e-6));
  CHECK(p.la == doctest::Approx(119520.0).epsilon(1e-6));

  // gamma -> 4 gamma at fixed volume: Bo quarters, La quadruples.
  const Params q = nondimensionalize(1000.0, 1e-3, 4 * 0.072, 9.81, volume, theta);
  CHECK(q.bo == doctest::Approx(p.bo / 4).epsilon(1e-12));
  CHECK(q.la == doctest::Approx(4 * p.la).epsilon(1e-12));

  // g = 0 switches gravity off.
  const Params r = nondimensionalize(1000.0, 1e-3, 0.072, 0.0, volume, theta);
  CHECK(r.bo == 0.0);
  CHECK(r.grav_coef() == 0.0);
  r.validate();

  CHECK_THROWS_AS(nondimensionalize(-1.0, 1e-3, 0.072, 9.81, volume, theta),
                  InvalidParameterError);
  CHECK_THROWS_AS(nondimensionalize(1000.0, 0.0, 0.072, 9.81, volume, theta),
                  InvalidParameterError);
}

TEST_CASE("validation") {
  Params p;
  p.theta_s = Expr::parse("pi/2");
  p.validate();

  Params bad_la = p;
  bad_la.la = 0.0;
  CHECK_THROWS_AS(bad_la.validate(), InvalidParameterError);

  Params bad_bo = p;
  bad_bo.bo = -0.1;
  CHECK_THROWS_AS(bad_bo.validate(), InvalidParameterError);

  Params no_theta;
  CHECK_THROWS_AS(no_theta.validate(), InvalidParameterError);
}

TEST_CASE("contact angle sampling is range checked") {
  Params p;
  p.theta_s = Expr::parse("pi/2 + x");
  CHECK(p.theta_at(0.0) == doctest::Approx(kPi / 2));
  CHECK(p.theta_at(0.5) == doctest::Approx(kPi / 2 + 0.5));
  CHECK_THROWS_AS(p.theta_at(10.0), InvalidParameterError);
  CHECK_THROWS_AS(p.theta_at(-kPi), InvalidParameterError);
}

}  // TEST_SUITE
