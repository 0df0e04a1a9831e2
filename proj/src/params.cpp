#include "droplet/params.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "droplet/errors.hpp"
#include "droplet/geometry.hpp"

namespace droplet {

void Params::validate() const {
  if (!(la > 0.0)) throw InvalidParameterError("params: La must be positive");
  if (!(bo >= 0.0)) throw InvalidParameterError("params: Bo must be nonnegative");
  if (theta_s.empty()) throw InvalidParameterError("params: contact angle field is not set");
  if (slip.empty()) throw InvalidParameterError("params: slip field is not set");
}

double Params::theta_at(double x) const {
  const double th = theta_s(x);
  if (!(th > 0.0 && th < kPi))
    throw InvalidParameterError("params: theta_s(" + std::to_string(x) + ") = " +
                                std::to_string(th) + " outside (0, pi)");
  return th;
}

double cap_area(double theta) { return theta - std::sin(theta) * std::cos(theta); }

Params nondimensionalize(double rho, double mu, double gamma_st, double g, double volume,
                         double theta_s) {
  if (!(rho > 0.0 && mu > 0.0 && gamma_st > 0.0 && g >= 0.0 && volume > 0.0))
    throw InvalidParameterError("nondimensionalize: dimensional inputs must be positive");
  if (!(theta_s > 0.0 && theta_s < kPi))
    throw InvalidParameterError("nondimensionalize: theta_s outside (0, pi)");
  const double length = std::sqrt(volume / cap_area(theta_s));
  Params p;
  p.bo = rho * g * length * length / gamma_st;
  p.la = gamma_st * rho * length / (mu * mu);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", theta_s);
  p.theta_s = Expr::parse(buf);
  p.slip = Expr::parse("0");
  return p;
}

}  // namespace droplet
