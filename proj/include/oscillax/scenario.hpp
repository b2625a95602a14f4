#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "oscillax/bands.hpp"

namespace oscillax {

struct ProfileSpec {
  std::string profile = "cos_bump";
  int m = 3;
  int power = 0;
  double root = 0;
  double scale = 1;
  double phase = 0;  // amp = scale e^{i phase}
  double band_lo = 0, band_hi = 1;
  double center = 0;
  bool tilde = false;  // potential only: Tilde V factorization requested

  BandFunction build() const;
};

inline const std::set<std::string>& known_checks() {
  static const std::set<std::string> k{"s1_cone", "s2_cone", "thm69", "bounds4", "phi", "tail", "residual"};
  return k;
}

struct Scenario {
  std::string name;
  ProfileSpec initial;
  ProfileSpec potential;
  double delta1 = 0.75;
  double delta2 = 2.25;
  double eps = 0;  // 0 selects min(0.25, (p2-p1)/4)
  double tol = 1e-9;
  std::uint64_t seed = 20240607;
  int random_cases = 1000;
  std::vector<double> t_grid;   // empty selects {1, 3.16, 10, 31.6, 100, 316, 1000}
  std::vector<double> xi_grid;  // empty selects 61 points over the bracketing interval
  double slope_t_max = 1e4;
  double residual_t = 1;
  double residual_dt = 5e-4;
  int residual_points = 1 << 14;
  std::set<std::string> checks;

  BandFunction u0() const { return initial.build(); }
  BandFunction V() const { return potential.build(); }
  double effective_eps() const;
  std::vector<double> effective_t_grid() const;
  std::vector<double> effective_xi_grid() const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
// "section.key=value" or "key=value" (params section)
void apply_override(Scenario& s, const std::string& assignment);
// throws ConfigError on any violated invariant
void validate(const Scenario& s);

}  // namespace oscillax
