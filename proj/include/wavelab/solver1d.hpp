#pragma once

#include <functional>
#include <vector>

#include "wavelab/kernels.hpp"
#include "wavelab/quadrature.hpp"

// Linear problem on the line
//
//   u_tt - (1+t)^{2l} u_xx = f(t, x),  u(0, x) = u0(x),  u_t(0, x) = u1(x).

namespace wavelab::solver1d {

using Profile = std::function<double(double)>;
using Source = std::function<double(double, double)>;

struct CauchyData1D {
  Profile u0;
  Profile u1;
  Source f;  // empty means f = 0
  /// u0, u1 and f(0, .) vanish for |x| > R; f(t, .) for |x| > R + A(t).
  double R = 1.0;
};

/// Value of the solution from the integral representation: the u0 boundary
/// term, the K0 and K1 data integrals and the source double integral.
double solve_exact(double t, double x, const CauchyData1D& data,
                   const kernels::KernelParams& params, const QuadConfig& q = {});

struct DependenceRegion {
  double t0 = 0.0;
  double x0 = 0.0;
  double lo = 0.0;  // base interval at t = 0
  double hi = 0.0;
  kernels::KernelParams params;

  /// Half-width phi(1+t0) - phi(1+t) of the backward cone at time t.
  double half_width(double t) const;
  bool contains(double t, double x) const;
};

DependenceRegion domain_of_dependence(double t0, double x0, const kernels::KernelParams& params);

struct FDGrid {
  double ell = 0.0;
  double dx = 0.0;
  double cfl = 0.0;
  double T = 0.0;
  std::vector<double> x;
  std::vector<double> t;               // snapshot times
  std::vector<std::vector<double>> u;  // u[snapshot][node]

  /// Final-time value at the node nearest to xq.
  double at_final(double xq) const;
};

struct FDOptions {
  double cfl = 0.9;
  /// Keep every n-th step; 0 keeps only the initial and final states.
  int snapshot_every = 0;
  double overflow_guard = 1e100;
};

/// Kick-drift-kick leapfrog for u_tt = (1+t)^{2l} u_xx + f with
/// dt_n = cfl dx / (1+t_n)^l and the last step shortened to land on T.
/// The grid is symmetric about 0 with x = 0 a node and zero Dirichlet ends
/// beyond R + A(T) + 2dx.
FDGrid solve_fd(const CauchyData1D& data, const kernels::KernelParams& params, double T,
                double dx, const FDOptions& opts = {});

struct ConvergenceRow {
  double dx = 0.0;
  double error = 0.0;
  double order = 0.0;  // NaN on the first row
};

/// Max-norm error of solve_fd against solve_exact at `probes` for
/// dx0, dx0/2, ... (levels rows). Probes must be multiples of dx0.
std::vector<ConvergenceRow> convergence_study(const CauchyData1D& data,
                                              const kernels::KernelParams& params, double T,
                                              int levels, double dx0,
                                              const std::vector<double>& probes,
                                              const FDOptions& opts = {},
                                              const QuadConfig& q = {});

/// Probes spaced by `spacing` covering the closed support [-R - A(T), R + A(T)].
std::vector<double> default_probes(double R, double reach, double spacing);

}  // namespace wavelab::solver1d
