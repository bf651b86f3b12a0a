#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

// Critical exponents for the scale-invariant damped/massive wave equation
//
//   v_tt - Lap v + mu1/(1+tau) v_tau + mu2^2/(1+tau)^2 v = |v|^p
//
// and for its image under the change of variables to the variable-speed
// problem
//
//   u_tt - (1+t)^{2l} Lap u = (l+1)^2 (1+t)^k |u|^p.
//
// Infinite exponents (the n + mu1 = 1 Strauss case, the (l+1)n = 1 case) are
// represented by +infinity, which orders above every real and prints "inf".

namespace wavelab::exponents {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative tolerance used when deciding that p sits exactly on a critical
/// exponent or that two exponent branches coincide.
inline constexpr double kCriticalRelTol = 1e-12;

struct ScaleInvariantModel {
  int n = 1;
  double mu1 = 0.0;
  double mu2sq = 0.0;

  /// (mu1 - 1)^2 - 4 mu2^2
  double delta() const;
};

struct TransformedModel {
  int n = 1;
  double ell = 0.0;
  double k = 0.0;

  double gamma() const { return ell / (2.0 * (ell + 1.0)); }
  double nu() const { return 1.0 / (2.0 * (ell + 1.0)); }
  double c_ell() const;
};

enum class Classification { HyperbolicLike, ParabolicLike, Boundary };

enum class Verdict { BlowupSubcritical, BlowupCriticalP1, BlowupCriticalP0, NotCoveredByTheorem };

enum class KatoCase { CaseI, CaseII, Inconclusive };

std::string_view to_string(Classification c);
std::string_view to_string(Verdict v);
std::string_view to_string(KatoCase k);

struct VerdictReport {
  Verdict verdict = Verdict::NotCoveredByTheorem;
  /// Sign conditions the data must satisfy for the verdict to apply.
  std::string data_conditions;
};

struct ExponentReport {
  double p_fujita = 0.0;
  double p_strauss = 0.0;
  double p1_nlk = 0.0;
  double p0_nlk = 0.0;
  double p_ne = 0.0;
  double p_mu = 0.0;
  Classification classification = Classification::Boundary;
  Verdict verdict = Verdict::NotCoveredByTheorem;
};

/// 1 + 2/m; throws DomainError for m <= 0.
double fujita(double m);

/// Positive root of (m-1)p^2 - (m+1)p - 2 = 0 for m > 1, +inf at m = 1.
double strauss(double m);

/// ((l+1)n + k + 1) / ((l+1)n - 1); +inf when (l+1)n = 1.
double p1_nlk(int n, double ell, double k);

/// Positive root of ((l+1)n-1)p^2 - ((l+1)n+2k+1-2l)p - 2(l+1) = 0.
/// Requires k > -2 (which makes the root exceed 1) and (l+1)n > 1.
double p0_nlk(int n, double ell, double k);

/// Same quadratic root without the k > -2 requirement. The quadratic always
/// has exactly one positive root, but it may fall below 1.
double p0_nlk_root(int n, double ell, double k);

/// max(p0_nlk, p1_nlk)
double p_ne(int n, double ell, double k);

double delta(double mu1, double mu2sq);

/// Speed exponent l and nonlinearity weight k of the transformed problem.
/// Throws DeltaOutOfRange unless delta is in (0, 1].
TransformedModel transform_params(const ScaleInvariantModel& model, double p);

using Profile = std::function<double(double)>;

/// Data of the transformed problem built from data (v0, v1) of the original one:
///   u0(x) = v0(x / sqrt(delta)),
///   u1(x) = (v1(x / sqrt(delta)) + (mu1 - 1 + sqrt(delta))/2 v0(x / sqrt(delta))) / sqrt(delta).
std::pair<Profile, Profile> transform_data(Profile v0, Profile v1,
                                           const ScaleInvariantModel& model);

/// Same map with delta supplied directly; used to exercise the formula with
/// parameter combinations that are not reachable from (mu1, mu2^2).
std::pair<Profile, Profile> transform_data(Profile v0, Profile v1, double mu1, double delta);

/// The two branches whose maximum is the blow-up exponent of the original model.
struct ExponentBranches {
  double strauss_branch;  // p0(n + mu1)
  double fujita_branch;   // p_Fuj(n + (mu1-1)/2 - sqrt(delta)/2)
};

ExponentBranches branches(int n, double mu1, double mu2sq);

/// max(p0(n + mu1), p_Fuj(n + (mu1 - 1)/2 - sqrt(delta)/2))
double p_mu(int n, double mu1, double mu2sq);

Classification classify(int n, double mu1, double mu2sq);

/// (n^2 + n + 2) / (n + 2): for mu2 = 0 and mu1 >= 1 the Strauss branch
/// dominates exactly when mu1 lies below this value.
double mu1_threshold(int n);

/// Locates the mu1 (with mu2 = 0) at which classify flips from
/// hyperbolic-like to parabolic-like, by bisection on [lo, hi].
double locate_mu1_threshold(int n, double lo, double hi, double tol = 1e-12);

VerdictReport blowup_verdict(int n, double mu1, double mu2sq, double p);

/// Verdict for the transformed problem with (l, k) given directly.
Verdict blowup_verdict_transformed(int n, double ell, double k, double p);

/// The two differential-inequality conditions that drive the subcritical
/// blow-up argument, valid for any real k:
///   below_p0: the quadratic in p is negative (p below the positive root),
///   below_p1: 1 > -(k+2)/(p-1) + (l+1)n.
struct KatoConditions {
  bool below_p0;
  bool below_p1;
};

KatoConditions kato_conditions(int n, double ell, double k, double p);

/// Structural check of the two cases of Kato's lemma for
///   F'' >= k1 (t+R)^{-q} F^p,  F >= k0 (t+R)^a.
/// CaseII only reports the structural condition; the lemma additionally
/// needs k0 large enough, which is not checked.
KatoCase kato_check(double p, double q, double a, double k0, double k1);

ExponentReport exponent_report(const ScaleInvariantModel& model, double p);

/// Report without a verdict (p not supplied).
ExponentReport exponent_report(const ScaleInvariantModel& model);

bool nearly_equal(double a, double b, double rel_tol = kCriticalRelTol);

}  // namespace wavelab::exponents
