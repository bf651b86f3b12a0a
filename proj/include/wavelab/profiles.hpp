#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace wavelab::profiles {

using Profile = std::function<double(double)>;

/// exp(1 - 1/(1 - (x/radius)^2)) inside |x| < radius, 0 outside. Peak value 1.
double bump(double x, double radius = 1.0);
double bump_deriv(double x, double radius = 1.0);

/// (1 - (x/radius)^2)^4 inside |x| < radius. C^3 with a polynomial antiderivative.
double poly(double x, double radius = 1.0);

/// Named profile scaled by amplitude; names are "bump", "poly", "zero".
/// Throws ConfigError for anything else.
Profile make(std::string_view name, double radius, double amplitude = 1.0);

std::vector<std::string> names();

}  // namespace wavelab::profiles
