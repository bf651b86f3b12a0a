#pragma once

// Special functions needed by the kernels and test functions: the Gauss
// hypergeometric series on [0, 1), the modified Bessel function K_nu through
// its cosh integral, the Bessel-based time factor lambda(t), and the sphere
// exponential integral phi(|x|).

namespace wavelab::specfun {

struct Tolerance {
  double rel_tol = 1e-12;
  int max_terms = 10000;
  double quad_abs_tol = 1e-12;
};

/// Plain power series sum_h (a)_h (b)_h / (c)_h z^h / h!, any z in [0, 1).
double hyp2f1_series(double a, double b, double c, double z, const Tolerance& tol = {});

/// Euler-transformed series (1-z)^{c-a-b} F(c-a, c-b; c; z).
double hyp2f1_euler(double a, double b, double c, double z, const Tolerance& tol = {});

/// Gauss hypergeometric function F(a, b; c; z) for z in [0, 1).
///
/// z <= 1/2 sums the power series directly; larger z goes through the Euler
/// transformation. Close to z = 1, where the geometric decay of either series
/// would exhaust max_terms, the 1 - z connection formula is used whenever
/// c - a - b is not close to an integer.
///
/// Throws InvalidParam for c in {0, -1, -2, ...} or z outside [0, 1) and
/// NonConvergent when max_terms is exceeded.
double hyp2f1(double a, double b, double c, double z, const Tolerance& tol = {});

/// d/dz F(a, b; c; z) = (ab/c) F(a+1, b+1; c+1; z).
double hyp2f1_deriv(double a, double b, double c, double z, const Tolerance& tol = {});

/// K_nu(x) = int_0^inf exp(-x cosh z) cosh(nu z) dz for nu >= 0, x > 0.
double bessel_k(double nu, double x, const Tolerance& tol = {});

/// exp(x) K_nu(x); finite for every x > 0 where K_nu itself underflows.
double bessel_k_scaled(double nu, double x, const Tolerance& tol = {});

/// -exp(x) K_nu'(x) = exp(x) int_0^inf cosh z exp(-x cosh z) cosh(nu z) dz.
double bessel_k_neg_deriv_scaled(double nu, double x, const Tolerance& tol = {});

/// lambda(t) = C (1+t)^{1/2} K_nu(phi(1+t)), nu = 1/(2(l+1)), lambda(0) = 1.
/// For l = 0 this is exactly exp(-t).
double lambda_fn(double t, double ell, const Tolerance& tol = {});

/// log lambda(t), finite for large t where lambda underflows.
double log_lambda(double t, double ell, const Tolerance& tol = {});

/// d lambda / dt obtained by differentiating the integral under the sign.
double lambda_deriv(double t, double ell, const Tolerance& tol = {});

/// lambda'(t) / lambda(t), evaluated without under- or overflow.
double lambda_log_deriv(double t, double ell, const Tolerance& tol = {});

/// Surface measure of the unit sphere S^{m} in R^{m+1} (S^0 = {-1, 1} has 2).
double sphere_measure(int m);

/// phi(r) = int_{S^{n-1}} exp(x . omega) d sigma for |x| = r.
double sphere_exp_integral(double r, int n, const Tolerance& tol = {});

/// exp(-r) phi(r).
double sphere_exp_integral_scaled(double r, int n, const Tolerance& tol = {});

}  // namespace wavelab::specfun
