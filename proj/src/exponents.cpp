#include "wavelab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab::exponents {

namespace {

// Positive root of a p^2 - b p - c = 0 with a >= 0 and c > 0, chosen to avoid
// cancellation. With a = 0 the equation is linear and may have no positive
// root, in which case +inf is returned.
double positive_root(double a, double b, double c) {
  if (a == 0.0) {
    return b < 0.0 ? -c / b : kInfinity;
  }
  const double disc = std::sqrt(b * b + 4.0 * a * c);
  if (b >= 0.0) return (b + disc) / (2.0 * a);
  return 2.0 * c / (disc - b);
}

double checked_sqrt_delta(double mu1, double mu2sq) {
  const double d = delta(mu1, mu2sq);
  if (!(d > 0.0 && d <= 1.0)) {
    throw DeltaOutOfRange("delta = " + std::to_string(d) + " is outside (0, 1]");
  }
  return std::sqrt(d);
}

void check_nlk(int n, double ell) {
  if (n < 1) throw DomainError("dimension n must be at least 1");
  if (ell < 0.0) throw DomainError("ell must be nonnegative");
}

void check_k(double k) {
  if (!(k > -2.0)) throw DomainError("k = " + std::to_string(k) + " must exceed -2");
}

}  // namespace

double ScaleInvariantModel::delta() const { return exponents::delta(mu1, mu2sq); }

double TransformedModel::c_ell() const {
  return std::pow(2.0, -1.0 / (ell + 1.0)) * std::pow(ell + 1.0, -ell / (ell + 1.0));
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::HyperbolicLike: return "hyperbolic-like";
    case Classification::ParabolicLike: return "parabolic-like";
    case Classification::Boundary: return "boundary";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::BlowupSubcritical: return "BlowupSubcritical";
    case Verdict::BlowupCriticalP1: return "BlowupCriticalP1";
    case Verdict::BlowupCriticalP0: return "BlowupCriticalP0";
    case Verdict::NotCoveredByTheorem: return "NotCoveredByTheorem";
  }
  return "?";
}

std::string_view to_string(KatoCase k) {
  switch (k) {
    case KatoCase::CaseI: return "CaseI";
    case KatoCase::CaseII: return "CaseII";
    case KatoCase::Inconclusive: return "Inconclusive";
  }
  return "?";
}

bool nearly_equal(double a, double b, double rel_tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), 1.0});
}

double fujita(double m) {
  if (!(m > 0.0)) throw DomainError("fujita: m = " + std::to_string(m) + " must be positive");
  return 1.0 + 2.0 / m;
}

double strauss(double m) {
  if (!(m >= 1.0)) throw DomainError("strauss: m = " + std::to_string(m) + " must be >= 1");
  if (m == 1.0) return kInfinity;
  return positive_root(m - 1.0, m + 1.0, 2.0);
}

double p1_nlk(int n, double ell, double k) {
  check_nlk(n, ell);
  const double m = (ell + 1.0) * n;
  if (m <= 1.0) return kInfinity;
  return (m + k + 1.0) / (m - 1.0);
}

double p0_nlk_root(int n, double ell, double k) {
  check_nlk(n, ell);
  const double m = (ell + 1.0) * n;
  return positive_root(m - 1.0, m + 2.0 * k + 1.0 - 2.0 * ell, 2.0 * (ell + 1.0));
}

double p0_nlk(int n, double ell, double k) {
  check_k(k);
  return p0_nlk_root(n, ell, k);
}

double p_ne(int n, double ell, double k) {
  return std::max(p0_nlk(n, ell, k), p1_nlk(n, ell, k));
}

double delta(double mu1, double mu2sq) { return (mu1 - 1.0) * (mu1 - 1.0) - 4.0 * mu2sq; }

TransformedModel transform_params(const ScaleInvariantModel& model, double p) {
  const double sd = checked_sqrt_delta(model.mu1, model.mu2sq);
  TransformedModel out;
  out.n = model.n;
  out.ell = (1.0 - sd) / sd;
  out.k = (1.0 - model.mu1 - sd) / (2.0 * sd) * (p - 1.0) + 2.0 * (1.0 - sd) / sd;
  return out;
}

std::pair<Profile, Profile> transform_data(Profile v0, Profile v1, double mu1, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw DeltaOutOfRange("delta = " + std::to_string(delta) + " is outside (0, 1]");
  }
  const double sd = std::sqrt(delta);
  const double shift = 0.5 * (mu1 - 1.0 + sd);
  Profile u0 = [v0, sd](double x) { return v0(x / sd); };
  Profile u1 = [v0, v1, sd, shift](double x) {
    const double y = x / sd;
    return (v1(y) + shift * v0(y)) / sd;
  };
  return {std::move(u0), std::move(u1)};
}

std::pair<Profile, Profile> transform_data(Profile v0, Profile v1,
                                           const ScaleInvariantModel& model) {
  return transform_data(std::move(v0), std::move(v1), model.mu1, model.delta());
}

ExponentBranches branches(int n, double mu1, double mu2sq) {
  if (n < 1) throw DomainError("dimension n must be at least 1");
  const double sd = checked_sqrt_delta(mu1, mu2sq);
  const double shifted = n + 0.5 * (mu1 - 1.0) - 0.5 * sd;
  // shifted = 0 only for n = 1, mu1 = mu2 = 0, where the Fujita branch is
  // the limit +inf.
  const double fuj = shifted <= 0.0 ? kInfinity : fujita(shifted);
  return {strauss(n + mu1), fuj};
}

double p_mu(int n, double mu1, double mu2sq) {
  const auto b = branches(n, mu1, mu2sq);
  return std::max(b.strauss_branch, b.fujita_branch);
}

Classification classify(int n, double mu1, double mu2sq) {
  const auto b = branches(n, mu1, mu2sq);
  if (nearly_equal(b.strauss_branch, b.fujita_branch)) return Classification::Boundary;
  return b.strauss_branch > b.fujita_branch ? Classification::HyperbolicLike
                                            : Classification::ParabolicLike;
}

double mu1_threshold(int n) {
  const double nd = n;
  return (nd * nd + nd + 2.0) / (nd + 2.0);
}

double locate_mu1_threshold(int n, double lo, double hi, double tol) {
  auto hyperbolic = [n](double mu1) {
    return classify(n, mu1, 0.0) == Classification::HyperbolicLike;
  };
  if (!hyperbolic(lo)) throw DomainError("locate_mu1_threshold: lo is not hyperbolic-like");
  if (hyperbolic(hi)) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (hyperbolic(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

VerdictReport blowup_verdict(int n, double mu1, double mu2sq, double p) {
  if (!(p > 1.0)) throw DomainError("blowup_verdict: p must exceed 1");
  const auto b = branches(n, mu1, mu2sq);
  const double sd = std::sqrt(delta(mu1, mu2sq));
  const double pm = std::max(b.strauss_branch, b.fujita_branch);

  VerdictReport out;
  out.data_conditions = "v0 >= 0, v1 + (" + std::to_string(0.5 * (mu1 - 1.0 + sd)) +
                        ") v0 >= 0; data nontrivial and compactly supported";
  if (nearly_equal(p, pm)) {
    if (n == 2 && nearly_equal(p, b.strauss_branch)) {
      out.verdict = Verdict::BlowupCriticalP0;
    } else if (nearly_equal(p, b.fujita_branch)) {
      out.verdict = Verdict::BlowupCriticalP1;
    } else {
      out.verdict = Verdict::NotCoveredByTheorem;
    }
  } else if (p < pm) {
    out.verdict = Verdict::BlowupSubcritical;
  } else {
    out.verdict = Verdict::NotCoveredByTheorem;
  }
  return out;
}

Verdict blowup_verdict_transformed(int n, double ell, double k, double p) {
  if (!(p > 1.0)) throw DomainError("blowup_verdict: p must exceed 1");
  const double p0 = p0_nlk(n, ell, k);
  const double p1 = p1_nlk(n, ell, k);
  const double pne = std::max(p0, p1);
  if (nearly_equal(p, pne)) {
    if (n >= 2 && nearly_equal(p, p0)) return Verdict::BlowupCriticalP0;
    if (nearly_equal(p, p1)) return Verdict::BlowupCriticalP1;
    return Verdict::NotCoveredByTheorem;
  }
  return p < pne ? Verdict::BlowupSubcritical : Verdict::NotCoveredByTheorem;
}

KatoConditions kato_conditions(int n, double ell, double k, double p) {
  check_nlk(n, ell);
  const double m = (ell + 1.0) * n;
  const double quad = (m - 1.0) * p * p - (m + 2.0 * k + 1.0 - 2.0 * ell) * p - 2.0 * (ell + 1.0);
  return {quad < 0.0, 1.0 > -(k + 2.0) / (p - 1.0) + m};
}

KatoCase kato_check(double p, double q, double a, double /*k0*/, double /*k1*/) {
  const double threshold = (q - 2.0) / (p - 1.0);
  if (a >= 1.0 && a > threshold && !nearly_equal(a, threshold)) return KatoCase::CaseI;
  if (q >= p + 1.0 && std::abs(a - threshold) <= kCriticalRelTol) return KatoCase::CaseII;
  return KatoCase::Inconclusive;
}

ExponentReport exponent_report(const ScaleInvariantModel& model) {
  const auto b = branches(model.n, model.mu1, model.mu2sq);
  ExponentReport r;
  r.p_fujita = fujita(model.n);
  r.p_strauss = strauss(model.n);
  r.p_mu = std::max(b.strauss_branch, b.fujita_branch);
  r.classification = classify(model.n, model.mu1, model.mu2sq);
  r.p0_nlk = r.p1_nlk = r.p_ne = std::numeric_limits<double>::quiet_NaN();
  return r;
}

ExponentReport exponent_report(const ScaleInvariantModel& model, double p) {
  ExponentReport r = exponent_report(model);
  const auto tm = transform_params(model, p);
  if (tm.k > -2.0) {
    r.p0_nlk = p0_nlk(tm.n, tm.ell, tm.k);
    r.p1_nlk = p1_nlk(tm.n, tm.ell, tm.k);
    r.p_ne = std::max(r.p0_nlk, r.p1_nlk);
  }
  r.verdict = blowup_verdict(model.n, model.mu1, model.mu2sq, p).verdict;
  return r;
}

}  // namespace wavelab::exponents
