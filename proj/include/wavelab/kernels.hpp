#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "wavelab/specfun.hpp"

// Kernels of the integral representation for the 1D problem
//
//   u_tt - (1+t)^{2l} u_xx = f,  u(0) = u0,  u_t(0) = u1.
//
// E(t, x; b, y) depends on the two times through phi(1+t), phi(1+b) with
// phi(tau) = tau^{l+1}/(l+1), and on the positions only through (x - y)^2:
//
//   E = ((phi_t + phi_b)^2 - (x-y)^2)^{-g} F(g, g; 1; z),
//   z = ((phi_t - phi_b)^2 - (x-y)^2) / ((phi_t + phi_b)^2 - (x-y)^2),
//
// with g = l / (2(l+1)). It is defined on the closed cone
// |x - y| <= |phi_t - phi_b| and taken to be 0 outside.

namespace wavelab::kernels {

/// Cone membership slack; points at most this far outside are clamped.
inline constexpr double kConeTol = 1e-12;

class KernelParams {
 public:
  explicit KernelParams(double ell = 0.0, specfun::Tolerance tol = {});

  double ell() const { return ell_; }
  double gamma() const { return gamma_; }
  double c_ell() const { return c_ell_; }

  /// phi(tau) = tau^{l+1} / (l+1)
  double phi(double tau) const;
  /// A(t) = phi(1+t) - phi(1), the distance travelled by a characteristic.
  double A(double t) const;
  double A_inv(double z) const;
  /// Propagation speed (1+t)^l.
  double speed(double t) const;

  const specfun::Tolerance& tol() const { return tol_; }

 private:
  double ell_ = 0.0;
  specfun::Tolerance tol_{};
  double gamma_ = 0.0;
  double c_ell_ = 0.5;
};

/// (t, b, y): observation time, source time, signed offset x - x0.
struct ConePoint {
  double t = 0.0;
  double b = 0.0;
  double y = 0.0;
};

/// True if |y| <= |A(t) - A(b)| within kConeTol.
bool in_cone(const ConePoint& pt, const KernelParams& params);

/// Hypergeometric argument z in [0, 1); throws ConeViolation outside the cone.
double hyp_argument(const ConePoint& pt, const KernelParams& params);

/// E(t, y; b, 0). Symmetric in (t, b) and even in y.
double E(const ConePoint& pt, const KernelParams& params);

/// Four-argument form E(t, x; b, y) = E(t, x - y; b, 0).
double E(double t, double x, double b, double y, const KernelParams& params);

/// dE/dy (t, y; b, 0) from the closed-form derivative.
double dE_dy(const ConePoint& pt, const KernelParams& params);

/// dE/db (t, y; b, 0) from the closed-form derivative; nonpositive for b <= t.
double dE_db(const ConePoint& pt, const KernelParams& params);

/// Velocity-datum kernel c_l E(t, y; 0, 0), |y| <= A(t).
double K1(double t, double y, const KernelParams& params);

/// Position-datum kernel -c_l dE/db (t, y; b, 0) at b = 0, |y| <= A(t).
double K0(double t, double y, const KernelParams& params);

/// Closed forms of the kernel and its derivatives on the cone boundary.
namespace boundary {
/// E(t, A(t) - A(b); b, 0)
double E_at_edge(double t, double b, const KernelParams& params);
/// dE/dy (t, y; b, 0) at y = A(t) - A(b)
double dE_dy_at_edge(double t, double b, const KernelParams& params);
/// E(A^{-1}(A(t) - y), y; t, 0)
double E_at_source_edge(double t, double y, const KernelParams& params);
/// dE/db (t, y; b, 0) at b = A^{-1}(A(t) - y)
double dE_db_at_source_edge(double t, double y, const KernelParams& params);
}  // namespace boundary

enum class Identity : int {
  SymmetryTimes = 0,      // E(t,x;b,y) = E(b,x;t,y)
  SymmetryPositions,      // E(t,x;b,y) = E(t,y;b,x)
  Translation,            // E(t,x;b,y) = E(b,x-y;t,0)
  Evenness,               // E(t,-x;b,0) = E(b,x;t,0)
  EdgeValue,              // E on y = A(t) - A(b)
  EdgeSlope,              // dE/dy on y = A(t) - A(b)
  SourceEdgeValue,        // E on b = A^{-1}(A(t) - y)
  SourceEdgeSlope,        // dE/db on b = A^{-1}(A(t) - y)
};

inline constexpr int kIdentityCount = 8;

std::string_view to_string(Identity id);

struct IdentityReport {
  std::array<double, kIdentityCount> max_rel_deviation{};
  double tol = 0.0;
  bool passed() const;
  double worst() const;
};

/// Evaluates all eight kernel identities at (t, b) for `samples` admissible
/// offsets drawn from a seeded generator, returning the largest relative
/// deviation per identity. Requires 0 <= b < t.
IdentityReport verify_kernel_identities(double t, double b, const KernelParams& params, double tol,
                                        int samples = 16, std::uint64_t seed = 1);

}  // namespace wavelab::kernels
