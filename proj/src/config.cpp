#include "wavelab/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "wavelab/errors.hpp"

namespace wavelab::config {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + value + "' is not a number");
  }
}

int to_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': '" + value + "' is not an integer");
  }
  return out;
}

// 17 significant digits round-trip every double.
std::string format(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

using Setter = std::function<void(const std::string&, const std::string&)>;

void apply(const KeyValues& kv, const std::map<std::string, Setter>& setters) {
  for (const auto& [key, value] : kv) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + key + "'");
    it->second(key, value);
  }
}

}  // namespace

KeyValues parse(std::istream& in) {
  KeyValues kv;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key=value");
    }
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
    kv[key] = trim(body.substr(eq + 1));
  }
  return kv;
}

KeyValues load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in);
}

blowup::SimConfig sim_config(const KeyValues& kv) {
  blowup::SimConfig c;
  auto num = [](double& field) {
    return [&field](const std::string& k, const std::string& v) { field = to_double(k, v); };
  };
  auto whole = [](int& field) {
    return [&field](const std::string& k, const std::string& v) { field = to_int(k, v); };
  };
  auto text = [](std::string& field) {
    return [&field](const std::string&, const std::string& v) { field = v; };
  };
  apply(kv, {{"n", whole(c.n)},
             {"ell", num(c.ell)},
             {"k", num(c.k)},
             {"p", num(c.p)},
             {"amplitude", num(c.amplitude)},
             {"profile_u0", text(c.profile_u0)},
             {"profile_u1", text(c.profile_u1)},
             {"R", num(c.R)},
             {"dx", num(c.dx)},
             {"cfl", num(c.cfl)},
             {"blowup_threshold", num(c.blowup_threshold)},
             {"T_max", num(c.T_max)},
             {"record_every", whole(c.record_every)},
             {"source_scale", num(c.source_scale)}});
  c.validate();
  return c;
}

KeyValues to_key_values(const blowup::SimConfig& c) {
  return {{"n", std::to_string(c.n)},
          {"ell", format(c.ell)},
          {"k", format(c.k)},
          {"p", format(c.p)},
          {"amplitude", format(c.amplitude)},
          {"profile_u0", c.profile_u0},
          {"profile_u1", c.profile_u1},
          {"R", format(c.R)},
          {"dx", format(c.dx)},
          {"cfl", format(c.cfl)},
          {"blowup_threshold", format(c.blowup_threshold)},
          {"T_max", format(c.T_max)},
          {"record_every", std::to_string(c.record_every)},
          {"source_scale", format(c.source_scale)}};
}

Solve1DConfig solve1d_config(const KeyValues& kv) {
  Solve1DConfig c;
  auto num = [](double& field) {
    return [&field](const std::string& k, const std::string& v) { field = to_double(k, v); };
  };
  auto text = [](std::string& field) {
    return [&field](const std::string&, const std::string& v) { field = v; };
  };
  apply(kv, {{"ell", num(c.ell)},
             {"profile_u0", text(c.profile_u0)},
             {"profile_u1", text(c.profile_u1)},
             {"profile_f", text(c.profile_f)},
             {"amplitude", num(c.amplitude)},
             {"R", num(c.R)},
             {"T", num(c.T)},
             {"dx", num(c.dx)},
             {"cfl", num(c.cfl)},
             {"levels", [&c](const std::string& k, const std::string& v) { c.levels = to_int(k, v); }},
             {"probe_spacing", num(c.probe_spacing)},
             {"abs_tol", num(c.abs_tol)}});
  if (!(c.ell >= 0.0)) throw ConfigError("ell must be nonnegative");
  if (!(c.R > 0.0 && c.T > 0.0 && c.dx > 0.0 && c.probe_spacing > 0.0 && c.abs_tol > 0.0)) {
    throw ConfigError("R, T, dx, probe_spacing and abs_tol must be positive");
  }
  if (!(c.cfl > 0.0 && c.cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
  if (c.levels < 2) throw ConfigError("levels must be at least 2");
  return c;
}

KeyValues to_key_values(const Solve1DConfig& c) {
  return {{"ell", format(c.ell)},         {"profile_u0", c.profile_u0},
          {"profile_u1", c.profile_u1},   {"profile_f", c.profile_f},
          {"amplitude", format(c.amplitude)}, {"R", format(c.R)},
          {"T", format(c.T)},             {"dx", format(c.dx)},
          {"cfl", format(c.cfl)},         {"levels", std::to_string(c.levels)},
          {"probe_spacing", format(c.probe_spacing)}, {"abs_tol", format(c.abs_tol)}};
}

}  // namespace wavelab::config
