#include "wavelab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab::kernels {

namespace {

// Quantities shared by E and its derivatives at one cone point.
struct Geometry {
  double phi_t;
  double phi_b;
  double y;    // signed offset, clamped into the cone
  double sum;  // (phi_t + phi_b)^2 - y^2
  double z;    // hypergeometric argument
};

Geometry geometry(const ConePoint& pt, const KernelParams& params) {
  if (pt.t < 0.0 || pt.b < 0.0) throw ConeViolation("kernel times must be nonnegative");
  Geometry g{};
  g.phi_t = params.phi(1.0 + pt.t);
  g.phi_b = params.phi(1.0 + pt.b);
  const double reach = std::abs(g.phi_t - g.phi_b);
  double ay = std::abs(pt.y);
  if (ay > reach + kConeTol) {
    throw ConeViolation("offset " + std::to_string(pt.y) + " outside cone of half-width " +
                        std::to_string(reach));
  }
  ay = std::min(ay, reach);
  g.y = std::copysign(ay, pt.y);
  const double total = g.phi_t + g.phi_b;
  // Factored forms keep the difference of squares accurate near the edge.
  g.sum = (total - ay) * (total + ay);
  const double num = std::max(0.0, (reach - ay) * (reach + ay));
  g.z = num / g.sum;
  return g;
}

double rel_dev(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale == 0.0) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

}  // namespace

KernelParams::KernelParams(double ell, specfun::Tolerance tol) : ell_(ell), tol_(tol) {
  if (!(ell >= 0.0)) throw DomainError("ell must be nonnegative");
  gamma_ = ell / (2.0 * (ell + 1.0));
  c_ell_ = std::pow(2.0, -1.0 / (ell + 1.0)) * std::pow(ell + 1.0, -ell / (ell + 1.0));
}

double KernelParams::phi(double tau) const { return std::pow(tau, ell_ + 1.0) / (ell_ + 1.0); }

double KernelParams::A(double t) const {
  // expm1 keeps A(t) accurate for small t.
  return std::expm1((ell_ + 1.0) * std::log1p(t)) / (ell_ + 1.0);
}

double KernelParams::A_inv(double z) const {
  return std::expm1(std::log1p((ell_ + 1.0) * z) / (ell_ + 1.0));
}

double KernelParams::speed(double t) const { return std::pow(1.0 + t, ell_); }

bool in_cone(const ConePoint& pt, const KernelParams& params) {
  return std::abs(pt.y) <= std::abs(params.A(pt.t) - params.A(pt.b)) + kConeTol;
}

double hyp_argument(const ConePoint& pt, const KernelParams& params) {
  return geometry(pt, params).z;
}

double E(const ConePoint& pt, const KernelParams& params) {
  const Geometry g = geometry(pt, params);
  const double gam = params.gamma();
  if (gam == 0.0) return 1.0;
  return std::pow(g.sum, -gam) * specfun::hyp2f1(gam, gam, 1.0, g.z, params.tol());
}

double E(double t, double x, double b, double y, const KernelParams& params) {
  return E(ConePoint{t, b, x - y}, params);
}

double dE_dy(const ConePoint& pt, const KernelParams& params) {
  const Geometry g = geometry(pt, params);
  const double gam = params.gamma();
  if (gam == 0.0) return 0.0;
  const auto& tol = params.tol();
  const double f = specfun::hyp2f1(gam, gam, 1.0, g.z, tol);
  const double df = specfun::hyp2f1_deriv(gam, gam, 1.0, g.z, tol);
  const double dz_dy = -8.0 * g.phi_t * g.phi_b * g.y / (g.sum * g.sum);
  return 2.0 * gam * g.y * std::pow(g.sum, -gam - 1.0) * f + std::pow(g.sum, -gam) * df * dz_dy;
}

double dE_db(const ConePoint& pt, const KernelParams& params) {
  const Geometry g = geometry(pt, params);
  const double gam = params.gamma();
  if (gam == 0.0) return 0.0;
  const auto& tol = params.tol();
  const double speed_b = params.speed(pt.b);
  const double f = specfun::hyp2f1(gam, gam, 1.0, g.z, tol);
  const double df = specfun::hyp2f1_deriv(gam, gam, 1.0, g.z, tol);
  const double power_term =
      -2.0 * gam * speed_b * (g.phi_b + g.phi_t) * std::pow(g.sum, -gam - 1.0) * f;
  const double dz_db = 4.0 * speed_b * g.phi_t *
                       (g.phi_b * g.phi_b - g.phi_t * g.phi_t + g.y * g.y) / (g.sum * g.sum);
  return power_term + std::pow(g.sum, -gam) * df * dz_db;
}

double K1(double t, double y, const KernelParams& params) {
  return params.c_ell() * E(ConePoint{t, 0.0, y}, params);
}

double K0(double t, double y, const KernelParams& params) {
  return -params.c_ell() * dE_db(ConePoint{t, 0.0, y}, params);
}

namespace boundary {

double E_at_edge(double t, double b, const KernelParams& params) {
  const double l = params.ell();
  const double g = params.gamma();
  return std::pow(2.0, -2.0 * g) * std::pow(l + 1.0, 2.0 * g) * std::pow(1.0 + t, -0.5 * l) *
         std::pow(1.0 + b, -0.5 * l);
}

double dE_dy_at_edge(double t, double b, const KernelParams& params) {
  const double l = params.ell();
  const double g = params.gamma();
  const double e = -1.5 * l - 1.0;
  return std::pow(2.0, -2.0 * g - 3.0) * l * (l + 2.0) * std::pow(l + 1.0, 2.0 * g) *
         std::pow(1.0 + t, e) * std::pow(1.0 + b, e) * (params.phi(1.0 + t) - params.phi(1.0 + b));
}

double E_at_source_edge(double t, double y, const KernelParams& params) {
  const double l = params.ell();
  const double g = params.gamma();
  return std::pow(2.0, -2.0 * g) * std::pow(l + 1.0, g) * std::pow(1.0 + t, -0.5 * l) *
         std::pow(params.phi(1.0 + t) - y, -g);
}

double dE_db_at_source_edge(double t, double y, const KernelParams& params) {
  const double l = params.ell();
  const double g = params.gamma();
  const double pt = params.phi(1.0 + t);
  return -std::pow(2.0, -2.0 * g - 1.0) * std::pow(l + 1.0, 2.0 * g) * std::pow(pt - y, g - 1.0) *
         std::pow(pt, -g - 1.0) * (g * (2.0 * pt - y) + g * g * y);
}

}  // namespace boundary

std::string_view to_string(Identity id) {
  switch (id) {
    case Identity::SymmetryTimes: return "symmetry-in-times";
    case Identity::SymmetryPositions: return "symmetry-in-positions";
    case Identity::Translation: return "translation";
    case Identity::Evenness: return "evenness";
    case Identity::EdgeValue: return "edge-value";
    case Identity::EdgeSlope: return "edge-slope";
    case Identity::SourceEdgeValue: return "source-edge-value";
    case Identity::SourceEdgeSlope: return "source-edge-slope";
  }
  return "?";
}

bool IdentityReport::passed() const { return worst() <= tol; }

double IdentityReport::worst() const {
  return *std::max_element(max_rel_deviation.begin(), max_rel_deviation.end());
}

IdentityReport verify_kernel_identities(double t, double b, const KernelParams& params,
                                        double tol, int samples, std::uint64_t seed) {
  if (!(b >= 0.0 && b < t)) throw DomainError("verify_kernel_identities needs 0 <= b < t");
  IdentityReport report;
  report.tol = tol;
  auto& dev = report.max_rel_deviation;
  auto record = [&dev](Identity id, double lhs, double rhs) {
    auto& slot = dev[static_cast<int>(id)];
    slot = std::max(slot, rel_dev(lhs, rhs));
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double reach = params.A(t) - params.A(b);
  const double full = params.A(t);

  for (int s = 0; s < samples; ++s) {
    // Two positions whose separation lies inside the cone.
    const double x = (2.0 * unit(rng) - 1.0) * 2.0;
    const double y = x - (2.0 * unit(rng) - 1.0) * reach;
    const double e_txby = E(t, x, b, y, params);
    record(Identity::SymmetryTimes, e_txby, E(b, x, t, y, params));
    record(Identity::SymmetryPositions, e_txby, E(t, y, b, x, params));
    record(Identity::Translation, e_txby, E(ConePoint{b, t, x - y}, params));

    const double offset = (2.0 * unit(rng) - 1.0) * reach;
    record(Identity::Evenness, E(ConePoint{t, b, -offset}, params),
           E(ConePoint{b, t, offset}, params));

    // Points on the characteristic through the source: y in [0, A(t)].
    const double ys = unit(rng) * full;
    const double bstar = params.A_inv(full - ys);
    record(Identity::SourceEdgeValue, E(ConePoint{bstar, t, ys}, params),
           boundary::E_at_source_edge(t, ys, params));
    record(Identity::SourceEdgeSlope, dE_db(ConePoint{t, bstar, ys}, params),
           boundary::dE_db_at_source_edge(t, ys, params));
  }
  record(Identity::EdgeValue, E(ConePoint{t, b, reach}, params),
         boundary::E_at_edge(t, b, params));
  record(Identity::EdgeSlope, dE_dy(ConePoint{t, b, reach}, params),
         boundary::dE_dy_at_edge(t, b, params));
  return report;
}

}  // namespace wavelab::kernels
