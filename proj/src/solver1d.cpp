#include "wavelab/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab::solver1d {

namespace {

// Integrates over [lo, hi] split at every breakpoint inside the interval, so
// that the edges of compactly supported data fall on panel boundaries.
template <class F>
double integrate_pieces(F&& f, double lo, double hi, std::vector<double> breaks, double tol,
                        int max_depth) {
  if (hi <= lo) return 0.0;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> cuts;
  for (double b : breaks) {
    if (b < lo || b > hi) continue;
    if (cuts.empty() || b > cuts.back()) cuts.push_back(b);
  }
  const double share = tol / static_cast<double>(std::max<std::size_t>(cuts.size() - 1, 1));
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1], share, max_depth);
  }
  return total;
}

// Offsets y where u(x - y) or u(x + y) crosses the edge of [-radius, radius].
std::vector<double> support_breaks(double x, double radius) {
  return {x - radius, x + radius, -x - radius, -x + radius};
}

// Integral over [0, reach] of (g(x - y) + g(x + y)) w(y).
template <class G, class W>
double symmetric_integral(const G& g, const W& w, double x, double reach, double radius,
                          double tol, int max_depth) {
  auto integrand = [&](double y) {
    const double s = g(x - y) + g(x + y);
    return s == 0.0 ? 0.0 : s * w(y);
  };
  // Outside |x| - radius <= y <= |x| + radius both samples vanish.
  const double lo = std::max(0.0, std::abs(x) - radius);
  const double hi = std::min(reach, std::abs(x) + radius);
  return integrate_pieces(integrand, lo, hi, support_breaks(x, radius), tol, max_depth);
}

}  // namespace

double solve_exact(double t, double x, const CauchyData1D& data,
                   const kernels::KernelParams& params, const QuadConfig& q) {
  if (t < 0.0) throw DomainError("solve_exact: t must be nonnegative");
  if (t == 0.0) return data.u0 ? data.u0(x) : 0.0;

  const double ell = params.ell();
  const double reach = params.A(t);
  const double tol = 0.25 * q.abs_tol;
  double value = 0.0;

  if (data.u0) {
    value += 0.5 * std::pow(1.0 + t, -0.5 * ell) * (data.u0(x + reach) + data.u0(x - reach));
    if (params.gamma() > 0.0) {
      auto k0 = [&](double y) { return kernels::K0(t, y, params); };
      value += symmetric_integral(data.u0, k0, x, reach, data.R, tol, q.max_depth);
    }
  }
  if (data.u1) {
    auto k1 = [&](double y) { return kernels::K1(t, y, params); };
    value += symmetric_integral(data.u1, k1, x, reach, data.R, tol, q.max_depth);
  }
  if (data.f) {
    const double inner_tol = tol / (2.0 * std::max(t, 1.0));
    auto inner = [&](double b) {
      const double width = reach - params.A(b);
      const double radius = data.R + params.A(b);
      auto fb = [&](double xs) { return data.f(b, xs); };
      auto e = [&](double y) { return kernels::E(kernels::ConePoint{t, b, y}, params); };
      return symmetric_integral(fb, e, x, width, radius, inner_tol, q.max_depth);
    };
    value += params.c_ell() * integrate(inner, 0.0, t, 0.5 * tol, q.max_depth);
  }
  return value;
}

double DependenceRegion::half_width(double t) const {
  return params.phi(1.0 + t0) - params.phi(1.0 + t);
}

bool DependenceRegion::contains(double t, double x) const {
  return t >= 0.0 && t < t0 && std::abs(x - x0) < half_width(t);
}

DependenceRegion domain_of_dependence(double t0, double x0, const kernels::KernelParams& params) {
  if (!(t0 > 0.0)) throw DomainError("domain_of_dependence: t0 must be positive");
  const double a = params.A(t0);
  return {t0, x0, x0 - a, x0 + a, params};
}

double FDGrid::at_final(double xq) const {
  if (u.empty() || x.empty()) throw DomainError("FDGrid is empty");
  const double pos = (xq - x.front()) / dx;
  const auto i = static_cast<long>(std::lround(pos));
  if (i < 0 || i >= static_cast<long>(x.size())) return 0.0;
  return u.back()[static_cast<std::size_t>(i)];
}

FDGrid solve_fd(const CauchyData1D& data, const kernels::KernelParams& params, double T,
                double dx, const FDOptions& opts) {
  if (!(dx > 0.0)) throw DomainError("solve_fd: dx must be positive");
  if (!(T >= 0.0)) throw DomainError("solve_fd: T must be nonnegative");
  if (!(opts.cfl > 0.0 && opts.cfl < 1.0)) throw DomainError("solve_fd: cfl must lie in (0, 1)");

  const double ell = params.ell();
  // Ten extra cells keep the Dirichlet ends clear of the numerical precursor.
  const long half = static_cast<long>(std::ceil((data.R + params.A(T) + 2.0 * dx) / dx)) + 10;
  const std::size_t n = static_cast<std::size_t>(2 * half + 1);

  FDGrid grid;
  grid.ell = ell;
  grid.dx = dx;
  grid.cfl = opts.cfl;
  grid.T = T;
  grid.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) grid.x[i] = (static_cast<double>(i) - half) * dx;

  std::vector<double> u(n, 0.0), v(n, 0.0), a(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    u[i] = data.u0 ? data.u0(grid.x[i]) : 0.0;
    v[i] = data.u1 ? data.u1(grid.x[i]) : 0.0;
  }

  const double inv_dx2 = 1.0 / (dx * dx);
  auto accel = [&](double t) {
    const double c2 = std::pow(1.0 + t, 2.0 * ell);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a[i] = c2 * (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_dx2;
      if (data.f) a[i] += data.f(t, grid.x[i]);
    }
  };

  grid.t.push_back(0.0);
  grid.u.push_back(u);

  double t = 0.0;
  long step = 0;
  accel(t);
  while (t < T) {
    double dt = opts.cfl * dx / std::pow(1.0 + t, ell);
    const bool last = t + dt >= T * (1.0 - 1e-14);
    if (last) {
      dt = T - t;
    } else if (T - (t + dt) < 0.25 * dt) {
      dt = 0.5 * (T - t);
    }
    for (std::size_t i = 1; i + 1 < n; ++i) v[i] += 0.5 * dt * a[i];
    for (std::size_t i = 1; i + 1 < n; ++i) u[i] += dt * v[i];
    t = last ? T : t + dt;
    accel(t);
    for (std::size_t i = 1; i + 1 < n; ++i) v[i] += 0.5 * dt * a[i];
    ++step;

    if (step % 64 == 0 || last) {
      for (double val : u) {
        if (!(std::abs(val) <= opts.overflow_guard)) {
          throw StabilityFailure("solve_fd: value " + std::to_string(val) + " at t = " +
                                 std::to_string(t));
        }
      }
    }
    if (last || (opts.snapshot_every > 0 && step % opts.snapshot_every == 0)) {
      grid.t.push_back(t);
      grid.u.push_back(u);
    }
  }
  return grid;
}

std::vector<ConvergenceRow> convergence_study(const CauchyData1D& data,
                                              const kernels::KernelParams& params, double T,
                                              int levels, double dx0,
                                              const std::vector<double>& probes,
                                              const FDOptions& opts, const QuadConfig& q) {
  if (levels < 2) throw DomainError("convergence_study: levels must be at least 2");
  std::vector<double> exact(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) exact[i] = solve_exact(T, probes[i], data, params, q);

  std::vector<ConvergenceRow> rows;
  double dx = dx0;
  for (int level = 0; level < levels; ++level, dx *= 0.5) {
    const FDGrid grid = solve_fd(data, params, T, dx, opts);
    double err = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      err = std::max(err, std::abs(grid.at_final(probes[i]) - exact[i]));
    }
    ConvergenceRow row{dx, err, std::numeric_limits<double>::quiet_NaN()};
    if (!rows.empty()) row.order = std::log2(rows.back().error / err);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> default_probes(double R, double reach, double spacing) {
  const long m = static_cast<long>(std::floor((R + reach) / spacing));
  std::vector<double> out;
  for (long i = -m; i <= m; ++i) out.push_back(static_cast<double>(i) * spacing);
  return out;
}

}  // namespace wavelab::solver1d
