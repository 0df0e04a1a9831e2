#pragma once

#include <cmath>

#include "droplet/expression.hpp"

namespace droplet {

// Dimensionless problem definition. Scaling: length by the cap radius L,
// velocity by U = sqrt(gamma/(rho L)), so Re = sqrt(La), Ca = 1/sqrt(La) and
// the gravity potential is Phi(x) = Bo * k(alpha).x with k = (-sin a, cos a).
// Downhill is +x for alpha > 0.
struct Params {
  double la = 1.0;    // Laplace number gamma*rho*L/mu^2
  double bo = 0.0;    // Bond number rho*g*L^2/gamma; 0 switches gravity off
  double alpha = 0.0; // plane inclination, radians
  Expr theta_s;                    // static contact angle theta_s(x), radians, range (0, pi)
  Expr slip = Expr::parse("0");    // friction coefficient sigma(x) >= 0 on the wall

  double re() const { return std::sqrt(la); }
  double ca() const { return 1.0 / std::sqrt(la); }
  double st_coef() const { return 1.0 / (ca() * re()); }
  double grav_coef() const { return bo; }  // 1/Fr^2

  // la > 0, bo >= 0, theta_s present; throws InvalidParameterError.
  void validate() const;
  // Range check 0 < theta_s(x) < pi at one abscissa.
  double theta_at(double x) const;
};

// Dimensionless groups from dimensional data. The characteristic length is
// the radius of the circular cap with the given contact angle and area:
// volume = L^2 (theta - sin theta cos theta).
Params nondimensionalize(double rho, double mu, double gamma_st, double g, double volume,
                         double theta_s);

// Area of the unit-radius circular segment with contact angle theta.
double cap_area(double theta);

}  // namespace droplet
