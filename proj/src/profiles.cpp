#include "wavelab/profiles.hpp"

#include <cmath>

#include "wavelab/errors.hpp"

namespace wavelab::profiles {

double bump(double x, double radius) {
  const double s = x / radius;
  const double gap = 1.0 - s * s;
  if (gap <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / gap);
}

double bump_deriv(double x, double radius) {
  const double s = x / radius;
  const double gap = 1.0 - s * s;
  if (gap <= 0.0) return 0.0;
  return bump(x, radius) * (-2.0 * s / (gap * gap)) / radius;
}

double poly(double x, double radius) {
  const double s = x / radius;
  const double gap = 1.0 - s * s;
  if (gap <= 0.0) return 0.0;
  const double g2 = gap * gap;
  return g2 * g2;
}

Profile make(std::string_view name, double radius, double amplitude) {
  if (!(radius > 0.0)) throw ConfigError("profile radius must be positive");
  if (name == "bump") return [=](double x) { return amplitude * bump(x, radius); };
  if (name == "poly") return [=](double x) { return amplitude * poly(x, radius); };
  if (name == "zero") return [](double) { return 0.0; };
  throw ConfigError("unknown profile '" + std::string(name) + "'");
}

std::vector<std::string> names() { return {"bump", "poly", "zero"}; }

}  // namespace wavelab::profiles
