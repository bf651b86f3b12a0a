#include "wavelab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wavelab/errors.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab::specfun {

namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

double distance_to_integer(double v) { return std::abs(v - std::round(v)); }

void check_hyp_args(double c, double z) {
  if (is_nonpositive_integer(c)) {
    throw InvalidParam("hyp2f1: c = " + std::to_string(c) + " is a nonpositive integer");
  }
  if (!(z >= 0.0 && z < 1.0)) {
    throw InvalidParam("hyp2f1: z = " + std::to_string(z) + " outside [0, 1)");
  }
}

// Truncation point Z for exp(-x (cosh z - 1)) cosh(nu z) (times cosh z when
// extra_growth = 1): the log of the integrand bound falls below the target.
double bessel_cutoff(double nu, double x, double extra_growth, double quad_abs_tol) {
  const double target = -std::log(quad_abs_tol) + 5.0;
  const double growth = nu + extra_growth;
  auto margin = [&](double z) { return x * (std::cosh(z) - 1.0) - growth * z; };
  double hi = 1.0;
  while (margin(hi) < target) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

double bessel_integral_scaled(double nu, double x, bool with_cosh, const Tolerance& tol) {
  if (!(x > 0.0)) {
    throw DomainError("bessel_k: x = " + std::to_string(x) + " must be positive");
  }
  if (nu < 0.0) {
    throw DomainError("bessel_k: negative order is not supported");
  }
  const double upper = bessel_cutoff(nu, x, with_cosh ? 1.0 : 0.0, tol.quad_abs_tol);
  auto integrand = [&](double z) {
    const double w = std::exp(-x * (std::cosh(z) - 1.0)) * std::cosh(nu * z);
    return with_cosh ? w * std::cosh(z) : w;
  };
  // Split at the width of the peak so the first panel resolves it.
  const double knee = std::min(upper, 1.0 / std::sqrt(x) + 0.5);
  return integrate(integrand, 0.0, knee, tol.quad_abs_tol, 40) +
         integrate(integrand, knee, upper, tol.quad_abs_tol, 40);
}

struct LambdaParts {
  double log_c;  // log C_l
  double nu;
};

LambdaParts lambda_parts(double ell, const Tolerance& tol) {
  const double nu = 1.0 / (2.0 * (ell + 1.0));
  const double x0 = 1.0 / (ell + 1.0);
  // lambda(0) = C K_nu(x0) = 1.
  const double log_k0 = std::log(bessel_k_scaled(nu, x0, tol)) - x0;
  return {-log_k0, nu};
}

double phi_time(double t, double ell) { return std::pow(1.0 + t, ell + 1.0) / (ell + 1.0); }

void check_lambda_args(double t, double ell) {
  if (t < 0.0) throw DomainError("lambda: t must be nonnegative");
  if (ell < 0.0) throw DomainError("lambda: ell must be nonnegative");
}

}  // namespace

double hyp2f1_series(double a, double b, double c, double z, const Tolerance& tol) {
  check_hyp_args(c, z);
  double term = 1.0;
  double sum = 1.0;
  if (z == 0.0) return sum;
  const double settle = std::max({std::abs(a), std::abs(b), std::abs(c)}) + 2.0;
  for (int h = 0; h < tol.max_terms; ++h) {
    const double hd = static_cast<double>(h);
    const double ratio = (a + hd) * (b + hd) / ((c + hd) * (hd + 1.0)) * z;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;  // a or b hit a nonpositive integer
    if (hd + 1.0 > settle) {
      // Past the last sign change the ratios are monotone, so the largest of
      // the current ratio and z bounds every remaining ratio.
      const double q = std::max(std::abs(ratio), z);
      if (q < 1.0) {
        const double tail = std::abs(term) * q / (1.0 - q);
        if (tail <= tol.rel_tol * std::abs(sum)) return sum;
      }
    }
  }
  throw NonConvergent("hyp2f1: series did not converge within " +
                      std::to_string(tol.max_terms) + " terms at z = " + std::to_string(z));
}

double hyp2f1_euler(double a, double b, double c, double z, const Tolerance& tol) {
  check_hyp_args(c, z);
  return std::pow(1.0 - z, c - a - b) * hyp2f1_series(c - a, c - b, c, z, tol);
}

double hyp2f1(double a, double b, double c, double z, const Tolerance& tol) {
  check_hyp_args(c, z);
  if (z <= 0.5 || is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    return hyp2f1_series(a, b, c, z, tol);
  }
  const double s = c - a - b;
  const bool gammas_finite = !is_nonpositive_integer(c - a) && !is_nonpositive_integer(c - b);
  if (z > 0.9 && gammas_finite && distance_to_integer(s) > 0.05) {
    const double w = 1.0 - z;
    const double g_c = std::tgamma(c);
    const double first = g_c * std::tgamma(s) / (std::tgamma(c - a) * std::tgamma(c - b)) *
                         hyp2f1_series(a, b, 1.0 - s, w, tol);
    const double second = std::pow(w, s) * g_c * std::tgamma(-s) /
                          (std::tgamma(a) * std::tgamma(b)) *
                          hyp2f1_series(c - a, c - b, 1.0 + s, w, tol);
    return first + second;
  }
  return hyp2f1_euler(a, b, c, z, tol);
}

double hyp2f1_deriv(double a, double b, double c, double z, const Tolerance& tol) {
  check_hyp_args(c, z);
  if (a * b == 0.0) return 0.0;
  return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, tol);
}

double bessel_k_scaled(double nu, double x, const Tolerance& tol) {
  return bessel_integral_scaled(nu, x, false, tol);
}

double bessel_k(double nu, double x, const Tolerance& tol) {
  return std::exp(-x) * bessel_k_scaled(nu, x, tol);
}

double bessel_k_neg_deriv_scaled(double nu, double x, const Tolerance& tol) {
  return bessel_integral_scaled(nu, x, true, tol);
}

double log_lambda(double t, double ell, const Tolerance& tol) {
  check_lambda_args(t, ell);
  if (ell == 0.0) return -t;
  const auto [log_c, nu] = lambda_parts(ell, tol);
  const double arg = phi_time(t, ell);
  return log_c + 0.5 * std::log1p(t) + std::log(bessel_k_scaled(nu, arg, tol)) - arg;
}

double lambda_fn(double t, double ell, const Tolerance& tol) {
  check_lambda_args(t, ell);
  if (ell == 0.0) return std::exp(-t);
  return std::exp(log_lambda(t, ell, tol));
}

double lambda_log_deriv(double t, double ell, const Tolerance& tol) {
  check_lambda_args(t, ell);
  if (ell == 0.0) return -1.0;
  const double nu = 1.0 / (2.0 * (ell + 1.0));
  const double arg = phi_time(t, ell);
  const double k = bessel_k_scaled(nu, arg, tol);
  const double dk = bessel_k_neg_deriv_scaled(nu, arg, tol);
  return 0.5 / (1.0 + t) - std::pow(1.0 + t, ell) * dk / k;
}

double lambda_deriv(double t, double ell, const Tolerance& tol) {
  check_lambda_args(t, ell);
  if (ell == 0.0) return -std::exp(-t);
  const auto [log_c, nu] = lambda_parts(ell, tol);
  const double arg = phi_time(t, ell);
  const double scale = std::exp(log_c - arg);
  const double k = bessel_k_scaled(nu, arg, tol);
  const double dk = bessel_k_neg_deriv_scaled(nu, arg, tol);
  return scale * (0.5 / std::sqrt(1.0 + t) * k - std::pow(1.0 + t, ell + 0.5) * dk);
}

double sphere_measure(int m) {
  if (m < 0) throw DomainError("sphere_measure: negative dimension");
  const double d = static_cast<double>(m) + 1.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double sphere_exp_integral_scaled(double r, int n, const Tolerance& tol) {
  if (n < 1) throw DomainError("sphere_exp_integral: n must be at least 1");
  if (r < 0.0) throw DomainError("sphere_exp_integral: r must be nonnegative");
  if (n == 1) return 1.0 + std::exp(-2.0 * r);
  const int power = n - 2;
  auto integrand = [&](double theta) {
    return std::exp(r * (std::cos(theta) - 1.0)) * std::pow(std::sin(theta), power);
  };
  // The integrand concentrates within ~1/sqrt(r) of theta = 0.
  const double knee = std::min(std::numbers::pi, 6.0 / std::sqrt(std::max(r, 1.0)));
  double value = integrate(integrand, 0.0, knee, tol.quad_abs_tol, 40);
  if (knee < std::numbers::pi) {
    value += integrate(integrand, knee, std::numbers::pi, tol.quad_abs_tol, 40);
  }
  return sphere_measure(n - 2) * value;
}

double sphere_exp_integral(double r, int n, const Tolerance& tol) {
  if (n == 1) {
    if (r < 0.0) throw DomainError("sphere_exp_integral: r must be nonnegative");
    return 2.0 * std::cosh(r);
  }
  return std::exp(r) * sphere_exp_integral_scaled(r, n, tol);
}

}  // namespace wavelab::specfun
