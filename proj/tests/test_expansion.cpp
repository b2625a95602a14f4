#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oscillax/errors.hpp"
#include "oscillax/expansion.hpp"
#include "oscillax/phase_primitives.hpp"

using namespace oscillax;
constexpr double kPi = std::numbers::pi;

TEST_CASE("leading and second terms") {
  CHECK(std::abs(leading_term(1.0, kPi) - std::polar(1.0, -kPi / 4)) < 1e-15);
  CHECK(leading_term(0.0, 3) == cd(0));
  BandFunction U(cos_bump(3), 1, 2, 0);
  CHECK(leading_term(U, 10, 5) == cd(0));
  CHECK(std::abs(leading_term(U, 10, 1.2)) == doctest::Approx(std::abs(leading_term(U.fourier(1.2), 10))));
  double r1 = std::abs(second_term(U, 10, 1.4) / leading_term(U, 10, 1.4));
  double r2 = std::abs(second_term(U, 100, 1.4) / leading_term(U, 100, 1.4));
  CHECK(r1 / r2 == doctest::Approx(10).epsilon(1e-12));
  CHECK_THROWS_AS(second_term(BandFunction(cos_bump(1), 0, 1), 1, 0.5), ConfigError);
}

TEST_CASE("second derivative of the m = 3 bump at the midpoint") {
  // cos^6(pi s/2) = 1 - (3/4) pi^2 s^2 + ..., so phi''(0) = -(3/2) pi^2
  double a = 1, b = 3;
  BandFunction U(cos_bump(3), a, b, 0);
  cd u2 = U.fourier_deriv(2, 2);
  CHECK(std::abs(u2 - (-1.5 * kPi * kPi) * std::pow(2 / (b - a), 2)) < 1e-12);
}

TEST_CASE("constant catalogue") {
  double base1 = 1 / (2 * std::sqrt(kPi)) + std::sqrt(1 / (4 * kPi) + 0.5);
  double base2 = 3 * std::sqrt(kPi) / 8 + std::sqrt(9 * kPi / 64 + 0.5);
  for (double d1 : {0.55, 0.75, 0.95}) {
    CHECK(erdelyi_c1(d1) == doctest::Approx(std::sqrt(kPi) / (2 - 2 * d1) * std::pow(base1, 2 * d1 - 1)).epsilon(1e-13));
    CHECK(erdelyi_c1(d1) * (1 - d1) / L_n(1, d1) == doctest::Approx(1).epsilon(1e-12));
  }
  for (double d2 : {2.1, 2.25, 2.4})
    CHECK(erdelyi_c2(d2) == doctest::Approx(1 / (30 - 12 * d2) * std::pow(base2, 2 * d2 - 4)).epsilon(1e-13));
  CHECK(erdelyi_c1(0.9) < erdelyi_c1(0.99));
  CHECK(erdelyi_c1(0.99) < erdelyi_c1(0.999));
  CHECK(cor_c1(0.75, 1, 3) - cor_c2(0.75, 1, 3) == doctest::Approx(std::sqrt(kPi)));
  CHECK(cor_c3(2.25, 1, 3) == doctest::Approx(erdelyi_c2(2.25) * std::pow(2, 0.5)));
  CHECK_THROWS_AS(erdelyi_c1(1.0), ConfigError);
  CHECK_THROWS_AS(erdelyi_c2(2.0), ConfigError);
}

TEST_CASE("one-term expansion") {
  BandFunction U(cos_bump(3, std::polar(1.0, 0.3)), 1, 2.5, 0.4);
  double worst = 0;
  for (double w : {1.0, 10.0, 100.0, 1000.0}) {
    auto r = verify_theorem_4_3(U, w, 1.7, 0.75);
    CHECK(r.pass);
    worst = std::max(worst, std::abs(r.remainder) * std::pow(w, 0.75));
  }
  CHECK(worst <= erdelyi_c1(0.75) * std::pow(1.5, 0.5) * U.sup_deriv(1) * kNormInflation);
  auto far = verify_theorem_4_3(U, 50, 9, 0.75);
  CHECK(far.leading == cd(0));
  CHECK(far.pass);
}

TEST_CASE("two-term expansion") {
  BandFunction U(cos_bump(3), 0, 2, 0);
  auto r = verify_theorem_4_6(U, 1000, 0.8, 2.25);
  CHECK(r.pass);
  CHECK(r.second != cd(0));
  CHECK_THROWS_AS(verify_theorem_4_6(BandFunction(cos_bump(2), 0, 2), 10, 1, 2.25), ConfigError);
}

TEST_CASE("corollary modes") {
  BandFunction U(cos_bump(3), 1, 2, 0.5);
  CHECK(verify_corollary_4_7(U, 1, 1.5, CorMode::i, 0.75, 2.25).pass);
  CHECK(verify_corollary_4_7(U, 40, 1.5, CorMode::ii, 0.75, 2.25).pass);
  CHECK(verify_corollary_4_7(U, 40, 3.0, CorMode::iii, 0.75, 2.25).pass);
  CHECK(verify_corollary_4_7(U, 40, 3.0, CorMode::iv, 0.75, 2.25).pass);
  CHECK_THROWS_AS(verify_corollary_4_7(U, 40, 1.5, CorMode::iii, 0.75, 2.25), ConfigError);
  CHECK_THROWS_AS(verify_corollary_4_7(U, 0.5, 1.5, CorMode::i, 0.75, 2.25), ConfigError);
  // mode iv decays faster than mode iii
  auto a = verify_corollary_4_7(U, 10, 3.0, CorMode::iv, 0.75, 2.25);
  auto b = verify_corollary_4_7(U, 1000, 3.0, CorMode::iv, 0.75, 2.25);
  double slope = std::log(std::abs(b.oracle) / std::abs(a.oracle)) / std::log(100.0);
  CHECK(slope <= -2);
}
