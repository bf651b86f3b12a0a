#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab {

/// Adaptive quadrature settings shared by the solvers.
struct QuadConfig {
  double abs_tol = 1e-10;
  int max_depth = 30;
};

namespace detail {

inline constexpr std::size_t kGaussOrder = 15;

struct GaussRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

/// Gauss-Legendre nodes and weights on [-1, 1], computed once by Newton
/// iteration on P_15.
const GaussRule& gauss_legendre_rule();

template <class F>
double gauss_panel(F& f, double a, double b) {
  const auto& rule = gauss_legendre_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGaussOrder; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

template <class F>
double adaptive_step(F& f, double a, double b, double whole, double tol, int depth,
                     int max_depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, a, mid);
  const double right = gauss_panel(f, mid, b);
  const double refined = left + right;
  if (std::abs(refined - whole) <= tol || mid <= a || mid >= b) {
    return refined;
  }
  if (depth >= max_depth) {
    throw QuadFailure("adaptive quadrature exceeded max_depth on [" + std::to_string(a) +
                      ", " + std::to_string(b) + "]");
  }
  // Shrinking by 1/sqrt(2) rather than 1/2 lets panels next to an
  // integrable endpoint singularity (error ~ h^{3/2}) still be accepted.
  const double sub_tol = std::numbers::sqrt2 * 0.5 * tol;
  return adaptive_step(f, a, mid, left, sub_tol, depth + 1, max_depth) +
         adaptive_step(f, mid, b, right, sub_tol, depth + 1, max_depth);
}

}  // namespace detail

/// Integrates f over [a, b] by adaptive 15-point Gauss-Legendre with interval
/// bisection. A panel at depth d is accepted once its two halves agree with
/// the whole to within abs_tol 2^{-d/2}. Throws QuadFailure past max_depth.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 30) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, abs_tol, max_depth);
  const double whole = detail::gauss_panel(f, a, b);
  return detail::adaptive_step(f, a, b, whole, abs_tol, 0, max_depth);
}

template <class F>
double integrate(F&& f, double a, double b, const QuadConfig& q) {
  return integrate(f, a, b, q.abs_tol, q.max_depth);
}

}  // namespace wavelab
