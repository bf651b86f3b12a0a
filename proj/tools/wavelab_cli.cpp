// Command-line front end for the wavelab library.
//
// Exit codes: 0 success, 1 runtime failure (including a failed kernel
// verification), 2 usage error or invalid parameters.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wavelab/blowup.hpp"
#include "wavelab/config.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/exponents.hpp"
#include "wavelab/kernels.hpp"
#include "wavelab/profiles.hpp"
#include "wavelab/solver1d.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace ex = wavelab::exponents;

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json jnum(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

// Writes to the named file, or stdout when the path is empty.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& out() { return path_.empty() ? std::cout : file_; }

 private:
  std::string path_;
  std::ofstream file_;
};

struct Manifest {
  std::string command;
  json config = json::object();
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const std::string& path) const {
    if (path.empty()) return;
    json m;
    m["command"] = command;
    m["config"] = config;
    m["version"] = kVersion;
    m["duration_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    m["outputs"] = outputs;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << m.dump(2) << "\n";
  }
};

json to_json(const wavelab::config::KeyValues& kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

// ---- exponents -------------------------------------------------------------

struct ExponentsArgs {
  int n = 1;
  double mu1 = 0.0;
  double mu2sq = 0.0;
  double p = std::nan("");
  bool transformed = false;
  double ell = 0.0;
  double k = 0.0;
  std::string out;
};

int run_exponents(const ExponentsArgs& a) {
  json j;
  if (a.transformed) {
    j["n"] = a.n;
    j["ell"] = a.ell;
    j["k"] = a.k;
    j["p1_nlk"] = jnum(ex::p1_nlk(a.n, a.ell, a.k));
    j["p0_nlk"] = jnum(ex::p0_nlk(a.n, a.ell, a.k));
    j["p_ne"] = jnum(ex::p_ne(a.n, a.ell, a.k));
    if (!std::isnan(a.p)) {
      j["p"] = a.p;
      j["verdict"] = ex::to_string(ex::blowup_verdict_transformed(a.n, a.ell, a.k, a.p));
    }
  } else {
    const ex::ScaleInvariantModel model{a.n, a.mu1, a.mu2sq};
    const auto r = std::isnan(a.p) ? ex::exponent_report(model) : ex::exponent_report(model, a.p);
    const auto b = ex::branches(a.n, a.mu1, a.mu2sq);
    j["n"] = a.n;
    j["mu1"] = a.mu1;
    j["mu2sq"] = a.mu2sq;
    j["delta"] = model.delta();
    j["p_fujita"] = jnum(r.p_fujita);
    j["p_strauss"] = jnum(r.p_strauss);
    j["strauss_branch"] = jnum(b.strauss_branch);
    j["fujita_branch"] = jnum(b.fujita_branch);
    j["p_mu"] = jnum(r.p_mu);
    j["classification"] = ex::to_string(r.classification);
    if (!std::isnan(a.p)) {
      const auto tm = ex::transform_params(model, a.p);
      const auto vr = ex::blowup_verdict(a.n, a.mu1, a.mu2sq, a.p);
      j["p"] = a.p;
      j["ell"] = tm.ell;
      j["k"] = tm.k;
      j["p1_nlk"] = jnum(r.p1_nlk);
      j["p0_nlk"] = jnum(r.p0_nlk);
      j["p_ne"] = jnum(r.p_ne);
      j["verdict"] = ex::to_string(vr.verdict);
      j["data_conditions"] = vr.data_conditions;
    }
  }
  Sink sink(a.out);
  sink.out() << j.dump(2) << "\n";
  return 0;
}

// ---- verify-kernels --------------------------------------------------------

struct VerifyArgs {
  std::vector<double> ells{0.0, 1.0, 2.0};
  int samples = 100;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  json j;
  j["seed"] = a.seed;
  j["samples"] = a.samples;
  j["tol"] = a.tol;
  json per_ell = json::array();
  bool all_pass = true;
  for (double ell : a.ells) {
    const wavelab::kernels::KernelParams params(ell);
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::array<double, wavelab::kernels::kIdentityCount> worst{};
    for (int s = 0; s < a.samples; ++s) {
      const double t = 0.1 + 4.9 * unit(rng);
      const double b = t * 0.95 * unit(rng);
      const auto rep = wavelab::kernels::verify_kernel_identities(t, b, params, a.tol, 4, rng());
      for (int i = 0; i < wavelab::kernels::kIdentityCount; ++i) {
        worst[i] = std::max(worst[i], rep.max_rel_deviation[i]);
      }
    }
    json e;
    e["ell"] = ell;
    bool pass = true;
    json devs = json::object();
    for (int i = 0; i < wavelab::kernels::kIdentityCount; ++i) {
      devs[std::string(wavelab::kernels::to_string(static_cast<wavelab::kernels::Identity>(i)))] =
          worst[i];
      pass = pass && worst[i] <= a.tol;
    }
    e["max_rel_deviation"] = devs;
    e["pass"] = pass;
    all_pass = all_pass && pass;
    per_ell.push_back(e);
  }
  j["results"] = per_ell;
  j["pass"] = all_pass;
  Sink sink(a.out);
  sink.out() << j.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

// ---- solve1d ---------------------------------------------------------------

struct Solve1DArgs {
  std::string config;
  std::string out;
  std::string table;
  std::string manifest;
};

int run_solve1d(const Solve1DArgs& a) {
  Manifest man;
  man.command = "solve1d";
  const auto kv = wavelab::config::load(a.config);
  const auto c = wavelab::config::solve1d_config(kv);
  man.config = to_json(wavelab::config::to_key_values(c));

  const wavelab::kernels::KernelParams params(c.ell);
  wavelab::solver1d::CauchyData1D data;
  data.R = c.R;
  data.u0 = wavelab::profiles::make(c.profile_u0, c.R, c.amplitude);
  data.u1 = wavelab::profiles::make(c.profile_u1, c.R, c.amplitude);
  if (c.profile_f != "zero") {
    auto g = wavelab::profiles::make(c.profile_f, c.R, c.amplitude);
    data.f = [g](double, double x) { return g(x); };
  }
  const wavelab::QuadConfig q{c.abs_tol, 30};
  wavelab::solver1d::FDOptions opts;
  opts.cfl = c.cfl;

  // Probes sit on multiples of the coarse spacing so every level hits them.
  const double spacing = std::max(c.dx, std::round(c.probe_spacing / c.dx) * c.dx);
  const auto probes = wavelab::solver1d::default_probes(c.R, params.A(c.T), spacing);
  const auto rows =
      wavelab::solver1d::convergence_study(data, params, c.T, c.levels, c.dx, probes, opts, q);
  const double finest = rows.back().dx;
  const auto grid = wavelab::solver1d::solve_fd(data, params, c.T, finest, opts);

  {
    Sink sink(a.out);
    auto& os = sink.out();
    os << "# ell=" << fmt(c.ell) << " dx=" << fmt(finest) << " cfl=" << fmt(c.cfl)
       << " T=" << fmt(c.T) << "\n";
    os << "t,x,exact,fd,error\n";
    for (double x : probes) {
      const double e = wavelab::solver1d::solve_exact(c.T, x, data, params, q);
      const double f = grid.at_final(x);
      os << fmt(c.T) << "," << fmt(x) << "," << fmt(e) << "," << fmt(f) << ","
         << fmt(std::abs(f - e)) << "\n";
    }
  }
  if (!a.out.empty()) man.outputs.push_back(a.out);
  if (!a.table.empty()) {
    Sink sink(a.table);
    sink.out() << "dx,error,order\n";
    for (const auto& r : rows) sink.out() << fmt(r.dx) << "," << fmt(r.error) << "," << fmt(r.order) << "\n";
    man.outputs.push_back(a.table);
  }
  man.write(a.manifest);
  return 0;
}

// ---- simulate / lifespan ---------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string manifest;
};

void write_trace(std::ostream& os, const wavelab::blowup::FunctionalTrace& trace) {
  os << "t,G,dG,G1,Lp_mass,sup_norm\n";
  for (const auto& s : trace) {
    os << fmt(s.t) << "," << fmt(s.G) << "," << fmt(s.dG) << "," << fmt(s.G1) << ","
       << fmt(s.Lp_mass) << "," << fmt(s.sup_norm) << "\n";
  }
}

int run_simulate(const SimulateArgs& a) {
  Manifest man;
  man.command = "simulate";
  const auto cfg = wavelab::config::sim_config(wavelab::config::load(a.config));
  man.config = to_json(wavelab::config::to_key_values(cfg));
  const auto res = wavelab::blowup::simulate(cfg);
  {
    Sink sink(a.out);
    write_trace(sink.out(), res.trace);
  }
  json summary;
  summary["outcome"] = wavelab::blowup::to_string(res.outcome);
  summary["T_est"] = jnum(res.T_est);
  summary["steps"] = res.steps;
  summary["samples"] = res.trace.size();
  summary["G_identity_residual"] = jnum(wavelab::blowup::check_G_identity(
      res.trace, cfg,
      res.outcome == wavelab::blowup::Outcome::BlewUp ? 0.5 * res.T_est : cfg.T_max));
  const auto g1 = wavelab::blowup::check_G1_bound(res.trace, cfg);
  summary["G1_min_scaled"] = jnum(g1.min_scaled);
  summary["G1_degenerate"] = g1.degenerate;
  try {
    const auto fit = wavelab::blowup::kato_fit(res.trace, cfg);
    summary["kato"] = {{"a", fit.a},
                       {"q", fit.q},
                       {"threshold", fit.threshold},
                       {"expected", fit.expected},
                       {"verdict", ex::to_string(fit.verdict)}};
  } catch (const wavelab::WindowTooShort& e) {
    summary["kato"] = e.what();
  }
  if (!a.out.empty()) {
    man.outputs.push_back(a.out);
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cerr << summary.dump() << "\n";
  }
  man.config["summary"] = summary;
  man.write(a.manifest);
  return 0;
}

struct LifespanArgs {
  std::string config;
  std::vector<double> eps;
  unsigned threads = 1;
  std::string out;
  std::string manifest;
};

int run_lifespan(const LifespanArgs& a) {
  Manifest man;
  man.command = "lifespan";
  const auto cfg = wavelab::config::sim_config(wavelab::config::load(a.config));
  man.config = to_json(wavelab::config::to_key_values(cfg));
  json eps = json::array();
  for (double e : a.eps) eps.push_back(e);
  man.config["epsilons"] = eps;
  const auto rows = wavelab::blowup::lifespan_scan(cfg, a.eps, a.threads);
  {
    Sink sink(a.out);
    sink.out() << "epsilon,T_est,censored\n";
    for (const auto& r : rows) {
      sink.out() << fmt(r.epsilon) << "," << fmt(r.T_est) << "," << (r.censored ? 1 : 0) << "\n";
    }
  }
  if (!a.out.empty()) man.outputs.push_back(a.out);
  man.write(a.manifest);
  return 0;
}

// ---- figure1 ---------------------------------------------------------------

struct FigureArgs {
  int n = 1;
  double mu2sq = 0.0;
  double mu1_min = 0.0;
  double mu1_max = 4.0;
  int points = 401;
  std::string out;
};

int run_figure1(const FigureArgs& a) {
  if (a.points < 2) throw UsageError("--points must be at least 2");
  Sink sink(a.out);
  auto& os = sink.out();
  os << "mu1,strauss_branch,fujita_branch,p_mu,classification\n";
  for (int i = 0; i < a.points; ++i) {
    const double mu1 = a.mu1_min + (a.mu1_max - a.mu1_min) * i / (a.points - 1);
    const double d = ex::delta(mu1, a.mu2sq);
    if (!(d > 0.0 && d <= 1.0)) continue;  // outside the admissible region
    const auto b = ex::branches(a.n, mu1, a.mu2sq);
    os << fmt(mu1) << "," << fmt(b.strauss_branch) << "," << fmt(b.fujita_branch) << ","
       << fmt(std::max(b.strauss_branch, b.fujita_branch)) << ","
       << ex::to_string(ex::classify(a.n, mu1, a.mu2sq)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blow-up exponents, kernels and simulations for variable-speed semilinear waves"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ExponentsArgs ea;
  auto* exp_cmd = app.add_subcommand("exponents", "Critical exponents, classification and verdict");
  exp_cmd->add_option("--n", ea.n, "Space dimension")->required();
  exp_cmd->add_option("--mu1", ea.mu1, "Damping coefficient");
  exp_cmd->add_option("--mu2sq", ea.mu2sq, "Mass coefficient mu2^2");
  exp_cmd->add_option("--p", ea.p, "Nonlinearity exponent");
  exp_cmd->add_flag("--transformed", ea.transformed, "Take (ell, k) directly");
  exp_cmd->add_option("--ell", ea.ell, "Speed exponent (with --transformed)");
  exp_cmd->add_option("--k", ea.k, "Weight exponent (with --transformed)");
  exp_cmd->add_option("--out", ea.out, "Output JSON file (default stdout)");

  VerifyArgs va;
  auto* ver_cmd = app.add_subcommand("verify-kernels", "Check the kernel identities");
  ver_cmd->add_option("--ell", va.ells, "Speed exponents (repeatable)")->capture_default_str();
  ver_cmd->add_option("--samples", va.samples, "Random (t, b) pairs per ell")->capture_default_str();
  ver_cmd->add_option("--seed", va.seed, "Generator seed")->capture_default_str();
  ver_cmd->add_option("--tol", va.tol, "Relative tolerance")->capture_default_str();
  ver_cmd->add_option("--out", va.out, "Output JSON file (default stdout)");

  Solve1DArgs sa;
  auto* solve_cmd = app.add_subcommand("solve1d", "Exact solution against finite differences");
  solve_cmd->add_option("--config", sa.config, "key=value config file")->required();
  solve_cmd->add_option("--out", sa.out, "Probe CSV (default stdout)");
  solve_cmd->add_option("--table", sa.table, "Convergence table CSV");
  solve_cmd->add_option("--manifest", sa.manifest, "Run manifest JSON");

  SimulateArgs ma;
  auto* sim_cmd = app.add_subcommand("simulate", "Semilinear simulation with functional trace");
  sim_cmd->add_option("--config", ma.config, "key=value config file")->required();
  sim_cmd->add_option("--out", ma.out, "Trace CSV (default stdout)");
  sim_cmd->add_option("--manifest", ma.manifest, "Run manifest JSON");

  LifespanArgs la;
  auto* life_cmd = app.add_subcommand("lifespan", "Blow-up time against data amplitude");
  life_cmd->add_option("--config", la.config, "key=value config file")->required();
  life_cmd->add_option("--eps", la.eps, "Amplitudes (comma separated or repeated)")
      ->required()
      ->delimiter(',');
  life_cmd->add_option("--threads", la.threads, "Concurrent runs")->capture_default_str();
  life_cmd->add_option("--out", la.out, "Table CSV (default stdout)");
  life_cmd->add_option("--manifest", la.manifest, "Run manifest JSON");

  FigureArgs fa;
  auto* fig_cmd = app.add_subcommand("figure1", "Exponent branches over a mu1 grid");
  fig_cmd->add_option("--n", fa.n, "Space dimension")->required();
  fig_cmd->add_option("--mu2sq", fa.mu2sq, "Mass coefficient mu2^2")->capture_default_str();
  fig_cmd->add_option("--mu1-min", fa.mu1_min, "Grid start")->capture_default_str();
  fig_cmd->add_option("--mu1-max", fa.mu1_max, "Grid end")->capture_default_str();
  fig_cmd->add_option("--points", fa.points, "Grid points")->capture_default_str();
  fig_cmd->add_option("--out", fa.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (exp_cmd->parsed()) return run_exponents(ea);
    if (ver_cmd->parsed()) return run_verify(va);
    if (solve_cmd->parsed()) return run_solve1d(sa);
    if (sim_cmd->parsed()) return run_simulate(ma);
    if (life_cmd->parsed()) return run_lifespan(la);
    if (fig_cmd->parsed()) return run_figure1(fa);
  } catch (const wavelab::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wavelab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
