#include "doctest.h"
#include "oscillax/errors.hpp"
#include "oscillax/scenario.hpp"

using namespace oscillax;

namespace {

const char* kText = R"(# comment
[initial]
profile = cos_bump
m = 3
band_lo = 2
band_hi = 3
center = 0.5

[potential]
m = 3
power = 2
root = 0
scale = 0.5
phase = 0.25
band_lo = -1
band_hi = 1
tilde = true

[params]
name = unit
delta1 = 0.8
seed = 17

[grids]
t = 1, 10, 100
xi = 1.5, 2.5

[checks]
enabled = s1_cone, s2_cone
)";

}  // namespace

TEST_CASE("parse a full scenario") {
  Scenario s = parse_scenario(kText);
  CHECK(s.name == "unit");
  CHECK(s.initial.band_lo == 2);
  CHECK(s.initial.center == 0.5);
  CHECK(s.potential.power == 2);
  CHECK(s.potential.tilde);
  CHECK(s.delta1 == 0.8);
  CHECK(s.delta2 == 2.25);
  CHECK(s.seed == 17);
  CHECK(s.t_grid == std::vector<double>{1, 10, 100});
  CHECK(s.xi_grid == std::vector<double>{1.5, 2.5});
  CHECK(s.checks == std::set<std::string>{"s1_cone", "s2_cone"});
  CHECK(std::abs(s.V().fourier(0.5)) == doctest::Approx(0.5 * 0.25 * std::pow(std::cos(3.141592653589793 / 4), 6)));
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("defaults") {
  Scenario s = parse_scenario(kText);
  s.t_grid.clear();
  s.xi_grid.clear();
  CHECK(s.effective_t_grid().size() == 7);
  auto xi = s.effective_xi_grid();
  REQUIRE(xi.size() == 61);
  CHECK(xi.front() == doctest::Approx(0));
  CHECK(xi.back() == doctest::Approx(5));
  CHECK(s.effective_eps() == 0.25);
}

TEST_CASE("overrides") {
  Scenario s = parse_scenario(kText);
  apply_override(s, "delta1=0.6");
  apply_override(s, "initial.band_hi=3.5");
  apply_override(s, "checks.enabled=phi");
  CHECK(s.delta1 == 0.6);
  CHECK(s.initial.band_hi == 3.5);
  CHECK(s.checks == std::set<std::string>{"phi"});
  CHECK_THROWS_AS(apply_override(s, "delta1"), ConfigError);
  CHECK_THROWS_AS(apply_override(s, "nosuch=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(s, "initial.m=abc"), ConfigError);
  CHECK_THROWS_AS(apply_override(s, "checks.enabled=s3_cone"), ConfigError);
}

TEST_CASE("validation") {
  Scenario s = parse_scenario(kText);
  Scenario bad = s;
  bad.delta1 = 1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = s;
  bad.delta2 = 2.5;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = s;
  bad.eps = 0.6;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = s;
  bad.initial.band_lo = -0.5;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.checks = {"s1_cone"};
  CHECK_NOTHROW(validate(bad));
  bad = s;
  bad.initial.m = 2;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = s;
  bad.checks.insert("thm69");
  bad.potential.tilde = false;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = s;
  bad.initial.band_hi = 1;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[weird]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[params]\ndelta1 = 0.7\ndelta1 = 0.8\n"), ConfigError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.ini"), ConfigError);
}
