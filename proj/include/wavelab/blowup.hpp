#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wavelab/exponents.hpp"
#include "wavelab/quadrature.hpp"

// Finite-difference simulation of
//
//   u_tt - (1+t)^{2l} Lap u = (l+1)^2 (1+t)^k |u|^p
//
// on the line (n = 1) or for radial data in n = 2, 3, together with the
// functionals G(t) = int u dx and G1(t) = int u psi dx.

namespace wavelab::blowup {

struct SimConfig {
  int n = 1;
  double ell = 0.0;
  double k = 0.0;
  double p = 2.0;
  double amplitude = 1.0;
  std::string profile_u0 = "bump";
  std::string profile_u1 = "zero";
  double R = 1.0;  // data support radius
  double dx = 0.02;
  double cfl = 0.5;
  double blowup_threshold = 1e8;
  double T_max = 10.0;
  int record_every = 10;
  /// Multiplies the nonlinear term; 0 gives the linear equation.
  double source_scale = 1.0;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

struct TraceSample {
  double t = 0.0;
  double G = 0.0;
  double dG = 0.0;
  double G1 = 0.0;
  double Lp_mass = 0.0;
  double sup_norm = 0.0;
};

using FunctionalTrace = std::vector<TraceSample>;

enum class Outcome { BlewUp, ReachedHorizon };

std::string_view to_string(Outcome o);

struct SimResult {
  FunctionalTrace trace;
  Outcome outcome = Outcome::ReachedHorizon;
  double T_est = std::numeric_limits<double>::infinity();
  long steps = 0;
  /// Largest |u| seen beyond R + A(t) + 2dx over recorded steps.
  double max_outside_cone = 0.0;
  /// Grid nodes and solution at the last recorded step.
  std::vector<double> r;
  std::vector<double> u_final;
};

/// Steps the equation with kick-drift-kick leapfrog until the sup norm
/// crosses blowup_threshold (or doubles in one step) or t reaches T_max.
/// The step is min(cfl dx / (1+t)^l, a reaction limit that shrinks as the
/// nonlinear term grows). Throws GridTooSmall when the solution reaches the
/// outer boundary.
SimResult simulate(const SimConfig& cfg);

/// Max over interior samples with t <= t_end of |D^2 G - S| / max|S|, where
/// S = (l+1)^2 (1+t)^k Lp_mass source_scale. When S vanishes identically the
/// absolute residual is returned.
double check_G_identity(const FunctionalTrace& trace, const SimConfig& cfg,
                        double t_end = std::numeric_limits<double>::infinity());

/// psi(t, r) = lambda(t) phi(r) with phi the sphere integral of exp(x . w).
double test_function_psi(double t, double r, const SimConfig& cfg);

struct G1Bound {
  double min_scaled = 0.0;  // min of G1 (1+t)^l over the trailing half
  bool degenerate = false;  // G1 identically zero
  bool positive = false;
};

G1Bound check_G1_bound(const FunctionalTrace& trace, const SimConfig& cfg);

struct KatoFit {
  double a = 0.0;          // fitted growth exponent of G against R + t
  double q = 0.0;          // (l+1) n (p-1) - k
  double threshold = 0.0;  // (q - 2)/(p - 1)
  double expected = 0.0;   // max(k - l p/2 - (n-1)(p/2-1)(l+1) + 2, 1)
  std::size_t samples = 0;
  exponents::KatoCase verdict = exponents::KatoCase::Inconclusive;
};

/// Least-squares slope of log G against log(R + t) over the trailing
/// `fraction` of the trace. Throws WindowTooShort below min_samples.
KatoFit kato_fit(const FunctionalTrace& trace, const SimConfig& cfg, double fraction = 0.5,
                 std::size_t min_samples = 10);

struct LifespanRow {
  double epsilon = 0.0;
  double T_est = 0.0;  // T_max when censored
  bool censored = false;
};

/// One simulation per amplitude; runs execute concurrently when threads > 1.
std::vector<LifespanRow> lifespan_scan(const SimConfig& cfg, const std::vector<double>& epsilons,
                                       unsigned threads = 1);

/// Radon transform of a radial function in n >= 2 dimensions,
///   |S^{n-2}| int_{|rho|}^{R} u(r) (r^2 - rho^2)^{(n-3)/2} r dr,
/// evaluated as |S^{n-2}| int_0^{sqrt(R^2 - rho^2)} u(sqrt(rho^2 + s^2)) s^{n-2} ds.
double radon_radial(const std::function<double(double)>& u, double rho, int n, double R_support,
                    const QuadConfig& q = {});

/// Same transform of a profile sampled on increasing nodes r (linear
/// interpolation, zero beyond r.back()).
double radon_radial(const std::vector<double>& r, const std::vector<double>& u, double rho, int n,
                    const QuadConfig& q = {});

}  // namespace wavelab::blowup
