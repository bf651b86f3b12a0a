#pragma once

#include <istream>
#include <map>
#include <string>

#include "wavelab/blowup.hpp"

namespace wavelab::config {

/// Flat key=value pairs. Blank lines and lines starting with '#' are skipped;
/// whitespace around keys and values is trimmed.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse(std::istream& in);
KeyValues load(const std::string& path);

/// Builds a SimConfig from keys named exactly as its fields. Unknown keys
/// and unparsable numbers raise ConfigError; missing keys keep defaults.
blowup::SimConfig sim_config(const KeyValues& kv);

KeyValues to_key_values(const blowup::SimConfig& cfg);

/// Settings for the exact-versus-finite-difference comparison.
struct Solve1DConfig {
  double ell = 0.0;
  std::string profile_u0 = "bump";
  std::string profile_u1 = "zero";
  std::string profile_f = "zero";  // time-independent source profile
  double amplitude = 1.0;
  double R = 1.0;
  double T = 1.0;
  double dx = 0.005;
  double cfl = 0.9;
  int levels = 3;
  double probe_spacing = 0.02;
  double abs_tol = 1e-10;
};

Solve1DConfig solve1d_config(const KeyValues& kv);
KeyValues to_key_values(const Solve1DConfig& cfg);

}  // namespace wavelab::config
