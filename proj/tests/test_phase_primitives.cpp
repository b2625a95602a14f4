#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oscillax/errors.hpp"
#include "oscillax/phase_primitives.hpp"

using namespace oscillax;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST_CASE("closed form at zero") {
  cd e = std::polar(1.0, -kPi / 4);
  CHECK(std::abs(phi_n_at_zero(1, 1) + std::sqrt(kPi) / 2 * e) < 1e-15);
  CHECK(std::abs(phi_n_at_zero(1, 1) - cd(-0.626657, 0.626657)) < 1e-6);
  CHECK(std::abs(phi_n_at_zero(2, 1) - cd(0, -0.5)) < 1e-15);
  CHECK(std::abs(phi_n_at_zero(4, 1) - cd(-1.0 / 12, 0)) < 1e-15);
  CHECK(std::abs(phi_n_at_zero(1, 4) - phi_n_at_zero(1, 1) / 2.0) < 1e-15);
}

TEST_CASE("quadrature matches closed form at zero") {
  for (int n = 1; n <= 4; ++n)
    for (double w : {0.5, 1.0, 10.0, 100.0}) {
      cd q = phi_n(n, 0, w);
      CHECK(std::abs(q - phi_n_at_zero(n, w)) < 1e-9);
    }
}

TEST_CASE("primitive property") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> us(0.05, 3), uw(0.5, 50);
  const double h = 1e-4;
  for (int i = 0; i < 40; ++i) {
    double s = us(rng), w = uw(rng);
    for (int n = 1; n <= 4; ++n) {
      // fourth-order central stencil; the plain two-point stencil carries an
      // h^2 (2ws)^2 / 6 truncation error that exceeds 1e-5 for w s near 150
      auto f = [&](double v) { return phi_n(n, v, w, 1e-14); };
      cd fd = (8.0 * (f(s + h) - f(s - h)) - (f(s + 2 * h) - f(s - 2 * h))) / (12 * h);
      cd expect = n == 1 ? std::polar(1.0, -w * s * s) : phi_n(n - 1, s, w, 1e-13);
      CHECK(std::abs(fd - expect) <= 1e-5 * std::max(std::abs(expect), 1e-3));
    }
  }
}

TEST_CASE("Erdelyi constants") {
  auto e1 = erdelyi_constants(1);
  CHECK(std::abs(e1.K - 1.043395) < 1e-6);
  CHECK(std::abs(e1.K - (1 / (2 * std::sqrt(kPi)) + std::sqrt(1 / (4 * kPi) + 0.5))) < 1e-12);
  auto e4 = erdelyi_constants(4);
  CHECK(std::abs(e4.a - 1.0 / 12) < 1e-15);
  CHECK(std::abs(e4.b - std::sqrt(kPi) / 16) < 1e-15);
  CHECK(std::abs(e4.c - 1.0 / 24) < 1e-15);
  CHECK(std::abs(e4.K - (3 * std::sqrt(kPi) / 8 + std::sqrt(9 * kPi / 64 + 0.5))) < 1e-12);
  for (int n = 1; n <= 4; ++n) {
    auto e = erdelyi_constants(n);
    CHECK(e.K > 0);
    CHECK(std::abs(e.a * e.K * e.K - e.b * e.K - e.c) < 1e-14);
    double d = 0.5 * n + 0.3;
    CHECK(std::abs(e.L(d) - e.a * std::pow(e.K, 2 * d - n)) < 1e-15);
  }
  CHECK(std::abs(L_n(1, 0.5 + 1e-12) - std::sqrt(kPi) / 2) < 1e-10);
  CHECK_THROWS_AS(L_n(1, 0.5), ConfigError);
  CHECK_THROWS_AS(L_n(1, 1.0), ConfigError);
  CHECK_THROWS_AS(L_n(4, 2.5), ConfigError);
}

TEST_CASE("bound on random cases") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> un(1, 4);
  std::uniform_real_distribution<double> us(1e-3, 5), ulw(std::log(0.5), std::log(1e4)), ud(0.02, 0.98);
  for (int i = 0; i < 150; ++i) {
    int n = un(rng);
    double s = us(rng), w = std::exp(ulw(rng)), delta = 0.5 * n + 0.5 * ud(rng);
    auto r = check_phi_bound(n, delta, s, w, 1e-10, 1e-9);
    CHECK(r.pass);
  }
}

TEST_CASE("Fresnel tail and frequency scaling") {
  for (double s : {10.0, 100.0}) {
    auto r = check_phi_bound(1, 0.75, s, 1);
    CHECK(r.pass);
    CHECK(r.rhs < 1);
  }
  double worst = 0;
  for (double w : {1.0, 10.0, 100.0, 1e3, 1e4}) worst = std::max(worst, std::abs(phi_n(2, 0.7, w)) * std::pow(w, 1.25));
  CHECK(worst <= L_n(2, 1.25) * std::pow(0.7, -0.5));
}

TEST_CASE("x^mu - y^mu <= (x-y)^mu") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 100), um(1e-6, 1);
  for (int i = 0; i < 1000; ++i) {
    double x = u(rng), y = u(rng), mu = um(rng);
    if (x < y) std::swap(x, y);
    CHECK(std::pow(x, mu) - std::pow(y, mu) <= std::pow(x - y, mu) * (1 + 1e-14) + 1e-300);
  }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(phi_n(5, 0, 1), ConfigError);
  CHECK_THROWS_AS(phi_n(1, -1, 1), ConfigError);
  CHECK_THROWS_AS(phi_n(1, 0, 0), ConfigError);
}
