#include "wavelab/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "wavelab/errors.hpp"
#include "wavelab/kernels.hpp"
#include "wavelab/profiles.hpp"
#include "wavelab/specfun.hpp"

namespace wavelab::blowup {

namespace {

double integrated_speed(double t, double ell) { return kernels::KernelParams(ell).A(t); }

double log_phi(double r, int n) {
  r = std::abs(r);
  if (n == 1) return r + std::log1p(std::exp(-2.0 * r));
  return r + std::log(specfun::sphere_exp_integral_scaled(r, n));
}

// Spatial discretisation: nodes, quadrature weights consistent with the
// Laplacian (so that sum w Lap u telescopes to boundary fluxes), and the
// operator itself.
class Grid {
 public:
  Grid(const SimConfig& cfg, double extent) : n_(cfg.n), h_(cfg.dx) {
    const long cells = static_cast<long>(std::ceil(extent / h_));
    if (n_ == 1) {
      nodes_.resize(static_cast<std::size_t>(2 * cells + 1));
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        nodes_[i] = (static_cast<double>(i) - static_cast<double>(cells)) * h_;
      }
      weights_.assign(nodes_.size(), h_);
      weights_.front() = weights_.back() = 0.0;
    } else {
      nodes_.resize(static_cast<std::size_t>(cells + 1));
      for (std::size_t i = 0; i < nodes_.size(); ++i) nodes_[i] = static_cast<double>(i) * h_;
      const double omega = specfun::sphere_measure(n_ - 1);
      const int m = n_ - 1;
      weights_.resize(nodes_.size());
      weights_[0] = omega * std::pow(0.5 * h_, n_) / n_;
      for (std::size_t i = 1; i < nodes_.size(); ++i) {
        weights_[i] = omega * std::pow(nodes_[i], m) * h_;
      }
      weights_.back() = 0.0;
      flux_.resize(nodes_.size());
      inv_area_.resize(nodes_.size());
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        flux_[i] = std::pow(nodes_[i] + 0.5 * h_, m);
        inv_area_[i] = i == 0 ? 0.0 : 1.0 / std::pow(nodes_[i], m);
      }
    }
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double distance(std::size_t i) const { return std::abs(nodes_[i]); }

  /// Lap u at interior nodes; the outer node(s) are Dirichlet.
  void laplacian(const std::vector<double>& u, std::vector<double>& out) const {
    const double inv_h2 = 1.0 / (h_ * h_);
    const std::size_t last = nodes_.size() - 1;
    if (n_ == 1) {
      for (std::size_t i = 1; i < last; ++i) out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
      out[0] = out[last] = 0.0;
      return;
    }
    // Reflection u_{-1} = u_1 at the origin, where Lap u -> n u_rr.
    out[0] = 2.0 * n_ * (u[1] - u[0]) * inv_h2;
    for (std::size_t i = 1; i < last; ++i) {
      out[i] = (flux_[i] * (u[i + 1] - u[i]) - flux_[i - 1] * (u[i] - u[i - 1])) * inv_area_[i] *
               inv_h2;
    }
    out[last] = 0.0;
  }

  bool is_interior(std::size_t i) const {
    return i + 1 < nodes_.size() && (n_ > 1 || i > 0);
  }

  /// Largest |u| within three cells of the outer boundary.
  double edge_magnitude(const std::vector<double>& u) const {
    double m = 0.0;
    const std::size_t s = nodes_.size();
    for (std::size_t j = 1; j <= 3 && j < s; ++j) {
      m = std::max(m, std::abs(u[s - 1 - j]));
      if (n_ == 1) m = std::max(m, std::abs(u[j]));
    }
    return m;
  }

 private:
  int n_;
  double h_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> flux_;      // r_{i+1/2}^{n-1}
  std::vector<double> inv_area_;  // r_i^{1-n}
};

double source_coefficient(const SimConfig& cfg, double t) {
  return cfg.source_scale * (cfg.ell + 1.0) * (cfg.ell + 1.0) * std::pow(1.0 + t, cfg.k);
}

double abs_pow(double v, double p) {
  const double a = std::abs(v);
  return p == 2.0 ? a * a : std::pow(a, p);
}

}  // namespace

void SimConfig::validate() const {
  if (n < 1 || n > 3) throw ConfigError("n must be 1, 2 or 3");
  if (!(ell >= 0.0)) throw ConfigError("ell must be nonnegative");
  if (!(k > -2.0)) throw ConfigError("k must exceed -2");
  if (!(p > 1.0)) throw ConfigError("p must exceed 1");
  if (!(amplitude > 0.0)) throw ConfigError("amplitude must be positive");
  if (!(R > 0.0)) throw ConfigError("R must be positive");
  if (!(dx > 0.0)) throw ConfigError("dx must be positive");
  if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
  if (!(blowup_threshold > 0.0)) throw ConfigError("blowup_threshold must be positive");
  if (!(T_max > 0.0)) throw ConfigError("T_max must be positive");
  if (record_every < 1) throw ConfigError("record_every must be at least 1");
  if (!(source_scale >= 0.0)) throw ConfigError("source_scale must be nonnegative");
}

std::string_view to_string(Outcome o) {
  return o == Outcome::BlewUp ? "BlewUp" : "ReachedHorizon";
}

SimResult simulate(const SimConfig& cfg) {
  cfg.validate();
  const double reach = integrated_speed(cfg.T_max, cfg.ell);
  const double extent = cfg.R + reach + 20.0 * cfg.dx + 0.05 * (cfg.R + reach);
  const Grid grid(cfg, extent);
  const std::size_t size = grid.size();
  const auto& w = grid.weights();

  const auto u0 = profiles::make(cfg.profile_u0, cfg.R, cfg.amplitude);
  const auto u1 = profiles::make(cfg.profile_u1, cfg.R, cfg.amplitude);
  std::vector<double> u(size, 0.0), v(size, 0.0), a(size, 0.0), lap(size, 0.0);
  std::vector<double> lphi(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (grid.is_interior(i)) {
      u[i] = u0(grid.nodes()[i]);
      v[i] = u1(grid.nodes()[i]);
    }
    lphi[i] = log_phi(grid.nodes()[i], cfg.n);
  }

  auto accel = [&](double t) {
    grid.laplacian(u, lap);
    const double c2 = std::pow(1.0 + t, 2.0 * cfg.ell);
    const double s = source_coefficient(cfg, t);
    for (std::size_t i = 0; i < size; ++i) {
      a[i] = grid.is_interior(i) ? c2 * lap[i] + s * abs_pow(u[i], cfg.p) : 0.0;
    }
  };

  auto sup_norm = [&] {
    double m = 0.0;
    for (double val : u) {
      if (!std::isfinite(val)) return std::numeric_limits<double>::infinity();
      m = std::max(m, std::abs(val));
    }
    return m;
  };

  SimResult res;
  res.r = grid.nodes();

  auto record = [&](double t, double sup) {
    TraceSample s;
    s.t = t;
    s.sup_norm = sup;
    const double llam = specfun::log_lambda(t, cfg.ell);
    const double front = cfg.R + integrated_speed(t, cfg.ell) + 2.0 * cfg.dx;
    for (std::size_t i = 0; i < size; ++i) {
      s.G += w[i] * u[i];
      s.dG += w[i] * v[i];
      s.Lp_mass += w[i] * abs_pow(u[i], cfg.p);
      if (u[i] != 0.0) s.G1 += w[i] * u[i] * std::exp(llam + lphi[i]);
      if (grid.distance(i) > front) res.max_outside_cone = std::max(res.max_outside_cone, std::abs(u[i]));
    }
    res.trace.push_back(s);
    if (grid.edge_magnitude(u) > 1e-10 * std::max(sup, 1.0)) {
      throw GridTooSmall("solution reached the grid boundary at t = " + std::to_string(t));
    }
  };

  double t = 0.0;
  double sup = sup_norm();
  record(t, sup);
  accel(t);
  long step = 0;
  while (t < cfg.T_max) {
    double dt = cfg.cfl * cfg.dx / std::pow(1.0 + t, cfg.ell);
    const double s = source_coefficient(cfg, t);
    if (s > 0.0 && sup > 0.0) {
      // Keeps the per-step relative change of the reaction term small.
      dt = std::min(dt, 0.1 / std::sqrt(s * cfg.p * std::pow(sup, cfg.p - 1.0)));
    }
    const bool last = t + dt >= cfg.T_max * (1.0 - 1e-14);
    if (last) {
      dt = cfg.T_max - t;
    } else if (cfg.T_max - (t + dt) < 0.25 * dt) {
      dt = 0.5 * (cfg.T_max - t);  // avoid a sliver step at the horizon
    }

    for (std::size_t i = 0; i < size; ++i) v[i] += 0.5 * dt * a[i];
    for (std::size_t i = 0; i < size; ++i) u[i] += dt * v[i];
    const double t_prev = t;
    t = last ? cfg.T_max : t + dt;
    accel(t);
    for (std::size_t i = 0; i < size; ++i) v[i] += 0.5 * dt * a[i];
    ++step;

    const double sup_prev = sup;
    sup = sup_norm();
    const bool runaway = !std::isfinite(sup) || sup > cfg.blowup_threshold ||
                         (step > 1 && sup_prev > 0.0 && sup > 2.0 * sup_prev);
    if (runaway) {
      res.outcome = Outcome::BlewUp;
      res.T_est = 0.5 * (t_prev + t);
      break;
    }
    if (last || step % cfg.record_every == 0) record(t, sup);
  }
  res.steps = step;
  res.u_final = u;
  return res;
}

double check_G_identity(const FunctionalTrace& trace, const SimConfig& cfg, double t_end) {
  double max_res = 0.0;
  double max_src = 0.0;
  for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
    if (trace[i + 1].t > t_end) break;
    const double hm = trace[i].t - trace[i - 1].t;
    const double hp = trace[i + 1].t - trace[i].t;
    const double d2 = 2.0 * ((trace[i + 1].G - trace[i].G) / hp - (trace[i].G - trace[i - 1].G) / hm) /
                      (hm + hp);
    const double src = source_coefficient(cfg, trace[i].t) * trace[i].Lp_mass;
    max_res = std::max(max_res, std::abs(d2 - src));
    max_src = std::max(max_src, std::abs(src));
  }
  return max_src > 0.0 ? max_res / max_src : max_res;
}

double test_function_psi(double t, double r, const SimConfig& cfg) {
  return specfun::lambda_fn(t, cfg.ell) * specfun::sphere_exp_integral(std::abs(r), cfg.n);
}

G1Bound check_G1_bound(const FunctionalTrace& trace, const SimConfig& cfg) {
  G1Bound out;
  if (trace.empty()) {
    out.degenerate = true;
    return out;
  }
  out.degenerate = std::all_of(trace.begin(), trace.end(),
                               [](const TraceSample& s) { return s.G1 == 0.0; });
  if (out.degenerate) return out;
  out.min_scaled = std::numeric_limits<double>::infinity();
  for (std::size_t i = trace.size() / 2; i < trace.size(); ++i) {
    out.min_scaled = std::min(out.min_scaled, trace[i].G1 * std::pow(1.0 + trace[i].t, cfg.ell));
  }
  out.positive = out.min_scaled > 0.0;
  return out;
}

KatoFit kato_fit(const FunctionalTrace& trace, const SimConfig& cfg, double fraction,
                 std::size_t min_samples) {
  const std::size_t first =
      static_cast<std::size_t>(std::floor((1.0 - fraction) * static_cast<double>(trace.size())));
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = first; i < trace.size(); ++i) {
    if (!(trace[i].G > 0.0)) continue;
    const double lx = std::log(cfg.R + trace[i].t);
    const double ly = std::log(trace[i].G);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < min_samples) {
    throw WindowTooShort("kato_fit: " + std::to_string(count) + " usable samples, need " +
                         std::to_string(min_samples));
  }
  const double m = static_cast<double>(count);
  KatoFit fit;
  fit.samples = count;
  fit.a = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.q = (cfg.ell + 1.0) * cfg.n * (cfg.p - 1.0) - cfg.k;
  fit.threshold = (fit.q - 2.0) / (cfg.p - 1.0);
  fit.expected = std::max(
      cfg.k - cfg.ell * cfg.p / 2.0 - (cfg.n - 1) * (cfg.p / 2.0 - 1.0) * (cfg.ell + 1.0) + 2.0,
      1.0);
  fit.verdict = exponents::kato_check(cfg.p, fit.q, fit.a, 1.0, 1.0);
  return fit;
}

std::vector<LifespanRow> lifespan_scan(const SimConfig& cfg, const std::vector<double>& epsilons,
                                       unsigned threads) {
  for (double e : epsilons) {
    if (!(e > 0.0)) throw ConfigError("lifespan_scan: amplitudes must be positive");
  }
  auto run = [&cfg](double eps) {
    SimConfig c = cfg;
    c.amplitude = eps;
    const SimResult r = simulate(c);
    const bool censored = r.outcome != Outcome::BlewUp;
    return LifespanRow{eps, censored ? cfg.T_max : r.T_est, censored};
  };
  std::vector<LifespanRow> rows(epsilons.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < epsilons.size(); ++i) rows[i] = run(epsilons[i]);
    return rows;
  }
  for (std::size_t start = 0; start < epsilons.size(); start += threads) {
    std::vector<std::future<LifespanRow>> batch;
    const std::size_t stop = std::min(epsilons.size(), start + threads);
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, run, epsilons[i]));
    }
    for (std::size_t i = start; i < stop; ++i) rows[i] = batch[i - start].get();
  }
  return rows;
}

double radon_radial(const std::function<double(double)>& u, double rho, int n, double R_support,
                    const QuadConfig& q) {
  if (n < 2) throw DomainError("radon_radial: n must be at least 2");
  const double a = std::abs(rho);
  if (a >= R_support) return 0.0;
  const double top = std::sqrt((R_support - a) * (R_support + a));
  auto integrand = [&](double s) {
    const double val = u(std::hypot(a, s));
    return n == 2 ? val : val * std::pow(s, n - 2);
  };
  return specfun::sphere_measure(n - 2) * integrate(integrand, 0.0, top, q);
}

double radon_radial(const std::vector<double>& r, const std::vector<double>& u, double rho, int n,
                    const QuadConfig& q) {
  if (r.size() != u.size() || r.size() < 2) throw DomainError("radon_radial: bad samples");
  auto interp = [&](double x) {
    if (x <= r.front()) return u.front();
    if (x >= r.back()) return 0.0;
    const auto it = std::upper_bound(r.begin(), r.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - r.begin());
    const double f = (x - r[j - 1]) / (r[j] - r[j - 1]);
    return (1.0 - f) * u[j - 1] + f * u[j];
  };
  return radon_radial(interp, rho, n, r.back(), q);
}

}  // namespace wavelab::blowup
