#include "oscillax/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oscillax/errors.hpp"

namespace oscillax {

namespace pt = boost::property_tree;

namespace {

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError("bad integer for " + key + ": '" + v + "'");
  return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad boolean for " + key + ": '" + v + "'");
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep)) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split(v, ',')) out.push_back(to_double(key, s));
  return out;
}

void set_profile(ProfileSpec& p, const std::string& section, const std::string& key, const std::string& v) {
  std::string k = section + "." + key;
  if (key == "profile") p.profile = v;
  else if (key == "m") p.m = to_int(k, v);
  else if (key == "power") p.power = to_int(k, v);
  else if (key == "root") p.root = to_double(k, v);
  else if (key == "scale") p.scale = to_double(k, v);
  else if (key == "phase") p.phase = to_double(k, v);
  else if (key == "band_lo") p.band_lo = to_double(k, v);
  else if (key == "band_hi") p.band_hi = to_double(k, v);
  else if (key == "center") p.center = to_double(k, v);
  else if (key == "tilde" && section == "potential") p.tilde = to_bool(k, v);
  else throw ConfigError("unknown key " + k);
}

void set_key(Scenario& s, const std::string& section, const std::string& key, const std::string& v) {
  std::string k = section + "." + key;
  if (section == "initial") set_profile(s.initial, section, key, v);
  else if (section == "potential") set_profile(s.potential, section, key, v);
  else if (section == "params") {
    if (key == "name") s.name = v;
    else if (key == "delta1") s.delta1 = to_double(k, v);
    else if (key == "delta2") s.delta2 = to_double(k, v);
    else if (key == "eps") s.eps = to_double(k, v);
    else if (key == "tol") s.tol = to_double(k, v);
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(to_int(k, v));
    else if (key == "random_cases") s.random_cases = to_int(k, v);
    else if (key == "residual_t") s.residual_t = to_double(k, v);
    else if (key == "residual_dt") s.residual_dt = to_double(k, v);
    else if (key == "residual_points") s.residual_points = to_int(k, v);
    else throw ConfigError("unknown key " + k);
  } else if (section == "grids") {
    if (key == "t") s.t_grid = to_list(k, v);
    else if (key == "xi") s.xi_grid = to_list(k, v);
    else if (key == "slope_t_max") s.slope_t_max = to_double(k, v);
    else throw ConfigError("unknown key " + k);
  } else if (section == "checks") {
    if (key != "enabled") throw ConfigError("unknown key " + k);
    s.checks.clear();
    for (const auto& c : split(v, ',')) {
      if (!known_checks().count(c)) throw ConfigError("unknown check '" + c + "'");
      s.checks.insert(c);
    }
  } else {
    throw ConfigError("unknown section [" + section + "]");
  }
}

}  // namespace

BandFunction ProfileSpec::build() const {
  if (profile != "cos_bump") throw ConfigError("unknown profile '" + profile + "'");
  if (m < 1 || m > 8) throw ConfigError("profile m must lie in 1..8");
  if (power < 0 || power > 4) throw ConfigError("profile power must lie in 0..4");
  if (!(band_lo < band_hi)) throw ConfigError("band_lo must be below band_hi");
  return BandFunction(cos_bump(m, std::polar(scale, phase), power, root), band_lo, band_hi, center);
}

double Scenario::effective_eps() const {
  return eps > 0 ? eps : std::min(0.25, (initial.band_hi - initial.band_lo) / 4);
}

std::vector<double> Scenario::effective_t_grid() const {
  if (!t_grid.empty()) return t_grid;
  return {1, 3.16, 10, 31.6, 100, 316, 1000};
}

std::vector<double> Scenario::effective_xi_grid() const {
  if (!xi_grid.empty()) return xi_grid;
  double p1 = initial.band_lo, p2 = initial.band_hi, a = potential.band_lo, b = potential.band_hi;
  double lo = std::min(p1, p1 + a) - 1, hi = std::max(p2, p2 + b) + 1;
  std::vector<double> g(61);
  for (int i = 0; i <= 60; ++i) g[i] = lo + (hi - lo) * i / 60;
  return g;
}

Scenario parse_scenario(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("scenario syntax: ") + e.what());
  }
  Scenario s;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("key '" + section + "' outside any section");
    for (const auto& [key, value] : body) set_key(s, section, key, value.data());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

void apply_override(Scenario& s, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must be key=value: '" + assignment + "'");
  std::string key = assignment.substr(0, eq), value = assignment.substr(eq + 1);
  auto dot = key.find('.');
  if (dot == std::string::npos) set_key(s, "params", key, value);
  else set_key(s, key.substr(0, dot), key.substr(dot + 1), value);
}

void validate(const Scenario& s) {
  BandFunction u0 = s.u0(), V = s.V();
  if (!(s.delta1 > 0.5 && s.delta1 < 1)) throw ConfigError("delta1 must lie in (1/2, 1)");
  if (!(s.delta2 > 2 && s.delta2 < 2.5)) throw ConfigError("delta2 must lie in (2, 5/2)");
  double p1 = u0.lo(), p2 = u0.hi();
  double eps = s.effective_eps();
  if (!(eps > 0 && eps < (p2 - p1) / 2)) throw ConfigError("eps must lie in (0, (p2-p1)/2)");
  if (!(s.tol > 0 && s.tol < 1e-3)) throw ConfigError("tol must lie in (0, 1e-3)");
  if (s.random_cases < 0) throw ConfigError("random_cases must be >= 0");
  for (double t : s.t_grid)
    if (!(t > 0)) throw ConfigError("t grid entries must be positive");
  if (!(s.slope_t_max >= 1e4)) throw ConfigError("slope_t_max must be at least 1e4 (two decades above t = 100)");
  bool s2 = s.checks.count("s2_cone") || s.checks.count("thm69");
  if (s2) {
    if (p1 <= 0 && p2 >= 0) throw ConfigError("S2 checks require 0 outside [p1,p2]");
    if (u0.smoothness_order() < 5) throw ConfigError("S2 checks require an initial profile of class C^5 (m >= 3)");
    if (V.smoothness_order() < 4) throw ConfigError("S2 checks require a potential profile of class C^4 (m >= 3)");
  }
  if (s.checks.count("thm69") && !s.potential.tilde)
    throw ConfigError("thm69 requires potential.tilde = true");
  if (s.checks.count("residual")) {
    if (!(s.residual_t > 0) || !(s.residual_dt > 0)) throw ConfigError("residual_t and residual_dt must be positive");
  }
}

}  // namespace oscillax
