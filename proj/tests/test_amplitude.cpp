#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oscillax/amplitude.hpp"
#include "oscillax/errors.hpp"

using namespace oscillax;
constexpr double kPi = std::numbers::pi;

namespace {

BandFunction real_initial() { return BandFunction(cos_bump(3), 2, 3, 0); }
BandFunction real_potential() { return BandFunction(cos_bump(3, 0.5, 2, 0), -1, 1, 0); }
BandFunction complex_initial() { return BandFunction(cos_bump(3, std::polar(1.0, -kPi / 4)), 2, 3, 0); }
BandFunction complex_potential() { return BandFunction(cos_bump(3, std::polar(0.5, kPi / 4), 1, 0), -1, 1, 0); }

}  // namespace

TEST_CASE("q factorization") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    double y = d(rng), p = d(rng);
    CHECK(std::abs(q_of(y, p) - y * (y - 2 * p)) <= 1e-14 * std::max(1.0, std::abs(y * (y - 2 * p)) + p * p));
    CHECK(q_tilde(y, p) == doctest::Approx((y - 2 * p) * (-2 * (p - y))));
  }
}

TEST_CASE("tilde potential") {
  for (const BandFunction& V : {real_potential(), complex_potential(),
                                BandFunction(cos_bump(3, 1.0, 0), 0.5, 1.5, 0.3),
                                BandFunction(cos_bump(3, 1.0, 1, -1), 0, 1, 0)}) {
    TildeV tv(V);
    CHECK(tv.eval(V.lo()) == cd(0));
    CHECK(tv.eval(V.hi()) == cd(0));
    for (double y = V.lo() + 0.013; y < V.hi(); y += 0.097) {
      CHECK(std::abs(tv.eval(y) * y - V.fourier(y)) < 1e-13);
      double h = 1e-5;
      cd fd = (tv.eval(y + h) - tv.eval(y - h)) / (2 * h);
      CHECK(std::abs(fd - tv.deriv(y)) < 1e-7 * std::max(1.0, std::abs(fd)));
    }
    CHECK(tv.w1_norm() > 0);
  }
  // endpoint zero forces the extension to vanish there
  TildeV edge(BandFunction(cos_bump(3, 1.0, 1, -1), 0, 1, 0));
  CHECK(std::abs(edge.eval(0)) < 1e-15);
  CHECK_THROWS_AS(TildeV(BandFunction(cos_bump(3), -1, 1)), ConfigError);
  CHECK_THROWS_AS(TildeV(BandFunction(cos_bump(3, 1.0, 1, 0.5), -1, 1)), ConfigError);
}

TEST_CASE("W1 and W2 supports and preconditions") {
  TildeV tv(real_potential());
  BandFunction u0 = real_initial();
  CHECK(w1_eval(tv, u0, 0.9) == cd(0));
  CHECK(w1_eval(tv, u0, 4.1) == cd(0));
  CHECK(w2_eval(tv, u0, 3, 4.1) == cd(0));
  CHECK(std::abs(w1_eval(tv, u0, 2.5)) > 0);
  CHECK_THROWS_AS(w1_eval(tv, u0, 0.3), ConfigError);
  CHECK_THROWS_AS(w2_eval(tv, u0, 1, -0.5), ConfigError);
  TildeV zero(BandFunction(cos_bump(3, 0.0, 2, 0), -1, 1));
  CHECK(w1_eval(zero, u0, 2.5) == cd(0));
  CHECK(w2_eval(zero, u0, 2, 2.5) == cd(0));
}

TEST_CASE("decomposition identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dt(0.5, 50), dp(1.0, 4.0);
  for (auto [V, u0] : {std::pair{real_potential(), real_initial()}, std::pair{complex_potential(), complex_initial()}}) {
    TildeV tv(V);
    AmplitudeW W{V, u0, 1e-11};
    for (int i = 0; i < 10; ++i) {
      double t = dt(rng), p = dp(rng);
      cd lhs = w_eval(W, t, p) - w1_eval(tv, u0, p) - w2_eval(tv, u0, t, p) / t;
      CHECK(std::abs(lhs) <= 10 * 3e-11);
    }
  }
}

TEST_CASE("c3 constants") {
  auto c = c3_constants(-1, 1, 1, 2, 0.25);
  CHECK(c.c3_tilde == doctest::Approx(48).epsilon(1e-14));
  CHECK(c.c3 * 2 * std::sqrt(kPi) == doctest::Approx(c.c3_tilde).epsilon(1e-14));
  double r = c3_constants(-1, 1, 1, 2, 1e-4).c3_tilde / c3_constants(-1, 1, 1, 2, 2e-4).c3_tilde;
  CHECK(r == doctest::Approx(4).epsilon(1e-3));
  CHECK_THROWS_AS(c3_constants(-1, 1, 1, 2, 0.5), ConfigError);
  CHECK_THROWS_AS(c3_constants(-1, 1, -1, 2, 0.1), ConfigError);
  CHECK(default_eps(1, 2) == 0.25);
  CHECK(default_eps(1, 1.4) == doctest::Approx(0.1));
}

TEST_CASE("uniform W2 bound") {
  BandFunction V = complex_potential(), u0 = complex_initial();
  TildeV tv(V);
  double eps = 0.25;
  double bound = c3_constants(-1, 1, 2, 3, eps).c3_tilde * kNormInflation * tv.w1_norm() * kNormInflation * u0.w_norm(1);
  for (double p = 1.05; p < 4; p += 0.25) {
    REQUIRE(admissible(-1, 1, 2, 3, eps, p));
    for (double t : {1.0, 10.0, 1e2, 1e3, 1e4}) CHECK(std::abs(w2_eval(tv, u0, t, p)) <= bound);
  }
}

TEST_CASE("positivity intervals") {
  auto rep = positivity_intervals(TildeV(complex_potential()), complex_initial(), 0.25);
  REQUIRE(rep.hypotheses_ok);
  REQUIRE(rep.intervals.size() == 2);
  CHECK(rep.intervals[0] == std::pair{3.0, 4.0});
  CHECK(rep.intervals[1] == std::pair{1.0, 2.0});
  CHECK(rep.verified[0]);
  CHECK(rep.verified[1]);
  CHECK(rep.min_abs_w1 > 0);
  CHECK(rep.best_abs_w1 >= rep.min_abs_w1);
  CHECK(((rep.best_p > 1 && rep.best_p < 2) || (rep.best_p > 3 && rep.best_p < 4)));

  auto abstain = positivity_intervals(TildeV(real_potential()), real_initial(), 0.25);
  CHECK_FALSE(abstain.hypotheses_ok);
  CHECK(abstain.intervals.empty());
  CHECK_FALSE(abstain.reason.empty());

  BandFunction up(cos_bump(3, std::polar(1.0, kPi / 4)), 0.5, 1.5, 0);
  auto acc = positivity_intervals(TildeV(up), complex_initial(), 0.25);
  REQUIRE(acc.hypotheses_ok);
  REQUIRE(acc.intervals.size() == 1);
  CHECK(acc.intervals[0] == std::pair{3.5, 4.5});
  CHECK(acc.verified[0]);

  auto near = positivity_intervals(TildeV(complex_potential()), BandFunction(cos_bump(3), 1, 1.5), 0.1);
  CHECK_FALSE(near.hypotheses_ok);
}

TEST_CASE("refined expansion") {
  BandFunction V = complex_potential(), u0 = complex_initial();
  TildeV tv(V);
  for (double t : {10.0, 100.0}) {
    WProfile w(AmplitudeW{V, u0}, t, 1e-10);
    for (double xi : {1.2, 1.8, 3.3, 3.9}) {
      auto r = verify_theorem_6_9(tv, u0, w, 2 * xi * t, 0.75, 0.25);
      CHECK(r.pass);
      CHECK(std::abs(r.leading) > 0);
    }
  }
  CHECK_THROWS_AS(verify_theorem_6_9(tv, u0, 10, 2 * 0.2 * 10, 0.75, 0.25), ConfigError);
}
