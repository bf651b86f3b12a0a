#include <doctest.h>

#include <cmath>
#include <random>

#include "wavelab/errors.hpp"
#include "wavelab/profiles.hpp"
#include "wavelab/solver1d.hpp"
#include "oracles.hpp"

namespace s1 = wavelab::solver1d;
namespace kn = wavelab::kernels;
namespace pr = wavelab::profiles;

namespace {

using oracle::dalembert;
using oracle::poly_anti;
using oracle::poly_anti2;

s1::CauchyData1D bump_data(double a0, double a1) {
  s1::CauchyData1D d;
  d.u0 = [a0](double x) { return a0 * pr::bump(x); };
  d.u1 = [a1](double x) { return a1 * pr::bump(x); };
  d.R = 1.0;
  return d;
}

}  // namespace

TEST_CASE("oracle antiderivatives") {
  // Check the hand-written antiderivatives by differentiation.
  for (double z : {-0.9, -0.2, 0.4, 0.95}) {
    const double h = 1e-5;
    CHECK((poly_anti(z + h) - poly_anti(z - h)) / (2 * h) == doctest::Approx(oracle::poly(z)).epsilon(1e-8));
    CHECK((poly_anti2(z + h) - poly_anti2(z - h)) / (2 * h) == doctest::Approx(poly_anti(z)).epsilon(1e-8));
  }
  CHECK(poly_anti(1.0) == doctest::Approx(256.0 / 315.0));
}

TEST_CASE("degenerate speed reproduces d'Alembert and Duhamel") {
  const kn::KernelParams p(0.0);
  s1::CauchyData1D d;
  d.u0 = [](double x) { return 0.7 * pr::poly(x); };
  d.u1 = [](double x) { return -0.4 * pr::poly(x); };
  d.f = [](double, double x) { return 1.3 * pr::poly(x); };
  d.R = 1.0;
  // The source is time independent, so its support does not grow; R bounds it.
  for (double t : {0.3, 1.0, 2.5}) {
    for (int i = 0; i < 25; ++i) {
      const double x = -4.0 + 8.0 * i / 24.0;
      CAPTURE(t);
      CAPTURE(x);
      CHECK(std::abs(s1::solve_exact(t, x, d, p, {1e-12, 40}) - dalembert(t, x, 0.7, -0.4, 1.3)) <
            1e-10);
    }
  }
}

TEST_CASE("initial value is the datum") {
  const auto d = bump_data(1.0, 0.5);
  for (double ell : {0.0, 1.0, 2.0}) {
    for (double x : {-0.5, 0.0, 0.8, 1.5}) {
      CHECK(s1::solve_exact(0.0, x, d, kn::KernelParams(ell)) ==
            doctest::Approx(pr::bump(x)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(s1::solve_exact(-1.0, 0.0, d, kn::KernelParams(1.0)), wavelab::DomainError);
}

TEST_CASE("domain of dependence") {
  const kn::KernelParams p(1.0);
  const auto region = s1::domain_of_dependence(1.0, 0.3, p);
  CHECK(region.lo == doctest::Approx(0.3 - 1.5));
  CHECK(region.hi == doctest::Approx(0.3 + 1.5));
  CHECK(region.half_width(0.0) == doctest::Approx(1.5));
  CHECK(region.half_width(1.0) == doctest::Approx(0.0));
  CHECK(region.contains(0.5, 0.3));
  CHECK_FALSE(region.contains(0.5, 0.3 + region.half_width(0.5) + 1e-9));
  CHECK_THROWS_AS(s1::domain_of_dependence(0.0, 0.0, p), wavelab::DomainError);

  // Data placed entirely outside [lo, hi] leave u(t0, x0) unchanged.
  s1::CauchyData1D base;
  base.u0 = [](double x) { return pr::bump(x, 0.5); };
  base.u1 = [](double) { return 0.0; };
  base.R = 0.5;
  auto far = base;
  const double shift = region.hi + 0.6;
  far.u1 = [shift](double x) { return 5.0 * pr::bump(x - shift, 0.5); };
  far.R = shift + 0.5;
  CHECK(s1::solve_exact(1.0, 0.3, far, p) == doctest::Approx(s1::solve_exact(1.0, 0.3, base, p)).epsilon(1e-12));
}

TEST_CASE("finite speed for the representation formula") {
  const auto d = bump_data(1.0, 1.0);
  for (double ell : {0.5, 1.0, 2.0}) {
    const kn::KernelParams p(ell);
    const double t = 1.2;
    const double front = d.R + p.A(t);
    CHECK(s1::solve_exact(t, front + 1e-6, d, p) == 0.0);
    CHECK(s1::solve_exact(t, -front - 0.3, d, p) == 0.0);
    CHECK(s1::solve_exact(t, 0.0, d, p) != 0.0);
  }
}

TEST_CASE("nonnegative data give nonnegative solutions") {
  const auto d = bump_data(1.0, 0.5);
  for (double ell : {0.5, 1.0, 2.0}) {
    const kn::KernelParams p(ell);
    for (int i = 0; i <= 30; ++i) {
      const double x = -3.0 + 6.0 * i / 30;
      CHECK(s1::solve_exact(1.5, x, d, p) >= -1e-12);
    }
  }
}

TEST_CASE("linearity and comparison") {
  const kn::KernelParams p(1.0);
  const auto a = bump_data(1.0, 0.0);
  const auto b = bump_data(0.0, 1.0);
  const auto ab = bump_data(2.0, -3.0);
  auto bigger = bump_data(1.0, 1.0);
  for (double x : {-1.0, 0.0, 0.6, 2.0}) {
    const double combo = 2 * s1::solve_exact(1.0, x, a, p) - 3 * s1::solve_exact(1.0, x, b, p);
    CHECK(s1::solve_exact(1.0, x, ab, p) == doctest::Approx(combo).epsilon(1e-9));
    CHECK(s1::solve_exact(1.0, x, bigger, p) >= s1::solve_exact(1.0, x, a, p) - 1e-12);
  }
}

TEST_CASE("finite differences: zero data and the light cone") {
  s1::CauchyData1D zero;
  zero.u0 = [](double) { return 0.0; };
  zero.u1 = [](double) { return 0.0; };
  const auto g = s1::solve_fd(zero, kn::KernelParams(1.0), 1.0, 0.01);
  for (double v : g.u.back()) CHECK(v == 0.0);
  CHECK(g.t.back() == doctest::Approx(1.0).epsilon(1e-15));

  const auto d = bump_data(1.0, 0.5);
  for (double ell : {0.0, 1.0, 2.0}) {
    const kn::KernelParams p(ell);
    const double dx = 0.005;
    const auto fd = s1::solve_fd(d, p, 1.0, dx);
    double outside = 0.0;
    for (std::size_t i = 0; i < fd.x.size(); ++i) {
      if (std::abs(fd.x[i]) > d.R + p.A(1.0) + 2 * dx) outside = std::max(outside, std::abs(fd.u.back()[i]));
    }
    CAPTURE(ell);
    CHECK(outside <= 1e-8);
  }
}

TEST_CASE("finite differences: snapshots and option checks") {
  const auto d = bump_data(1.0, 0.0);
  s1::FDOptions opts;
  opts.snapshot_every = 10;
  const auto g = s1::solve_fd(d, kn::KernelParams(1.0), 0.5, 0.02, opts);
  CHECK(g.t.size() > 2);
  CHECK(g.u.size() == g.t.size());
  CHECK(g.t.front() == 0.0);
  CHECK(g.at_final(0.0) == g.u.back()[g.x.size() / 2]);
  opts.cfl = 1.5;
  CHECK_THROWS_AS(s1::solve_fd(d, kn::KernelParams(1.0), 0.5, 0.02, opts), wavelab::DomainError);
  CHECK_THROWS_AS(s1::solve_fd(d, kn::KernelParams(1.0), 0.5, 0.0), wavelab::DomainError);
}

TEST_CASE("finite differences match the representation formula with a source") {
  const kn::KernelParams p(1.0);
  s1::CauchyData1D d;
  d.u0 = [](double x) { return pr::bump(x); };
  d.u1 = [](double) { return 0.0; };
  d.f = [](double, double x) { return pr::bump(x); };
  d.R = 1.0;
  const auto g = s1::solve_fd(d, p, 1.0, 0.005);
  double err = 0.0;
  for (double x : {-2.0, -1.0, 0.0, 0.5, 1.5}) {
    err = std::max(err, std::abs(g.at_final(x) - s1::solve_exact(1.0, x, d, p)));
  }
  CHECK(err < 1e-4);
}

TEST_CASE("second-order convergence") {
  const auto d = bump_data(1.0, 0.0);
  const kn::KernelParams p(1.0);
  const auto probes = s1::default_probes(d.R, p.A(1.0), 0.1);
  CHECK(probes.front() == doctest::Approx(-2.5));
  CHECK(probes.back() == doctest::Approx(2.5));
  const auto rows = s1::convergence_study(d, p, 1.0, 3, 0.005, probes);
  REQUIRE(rows.size() == 3);
  CHECK(std::isnan(rows[0].order));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].dx == doctest::Approx(rows[i - 1].dx / 2));
    CHECK(rows[i].order > 1.8);
    CHECK(rows[i].order < 2.2);
  }
  CHECK(rows.back().error < 1e-3);
  CHECK_THROWS_AS(s1::convergence_study(d, p, 1.0, 1, 0.005, probes), wavelab::DomainError);
}
