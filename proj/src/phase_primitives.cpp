#include "oscillax/phase_primitives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscillax/errors.hpp"
#include "oscillax/gauss.hpp"

namespace oscillax {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

void check_order(int n) {
  if (n < 1 || n > 4) throw ConfigError("phi_n: order must be in 1..4");
}

// Gamma at n/2, n = 1..4
double half_gamma(int n) {
  switch (n) {
    case 1: return kSqrtPi;
    case 2: return 1;
    case 3: return kSqrtPi / 2;
    case 4: return 1;
  }
  throw ConfigError("half_gamma: unsupported argument");
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

cd phi_n(int n, double s, double omega, double quad_tol) {
  check_order(n);
  if (!(s >= 0)) throw ConfigError("phi_n: s must be >= 0");
  if (!(omega > 0)) throw ConfigError("phi_n: omega must be > 0");
  double L = std::max(std::log(1 / quad_tol), 1.0);
  double T = std::sqrt(L / omega) + n;
  // the e^{-sqrt2 w s t} factor allows an earlier cut when w s is large
  double alpha = std::sqrt(2.0) * omega * s;
  if (alpha > 0) T = std::min(T, (L + (n - 1) * std::log(T + 1) + 5) / alpha);

  const cd rot = std::polar(1.0, -kPi / 4);
  const GaussRule& g = gauss_legendre(64);
  auto integrate = [&](int panels) {
    double h = T / panels;
    cd sum = 0;
    for (int j = 0; j < panels; ++j) {
      double mid = h * (j + 0.5);
      cd part = 0;
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        double t = mid + 0.5 * h * g.x[i];
        cd z = s + t * rot;
        cd poly = 1;
        for (int k = 1; k < n; ++k) poly *= t * rot;
        part += g.w[i] * poly * std::exp(cd(0, -omega) * z * z);
      }
      sum += 0.5 * h * part;
    }
    return sum * rot;
  };
  double pref = (n % 2 ? -1.0 : 1.0) / factorial(n - 1);
  cd prev = integrate(1);
  for (int panels = 2; panels <= (1 << 16); panels *= 2) {
    cd next = integrate(panels);
    if (panels >= 4 && std::abs(next - prev) < quad_tol) return pref * next;
    prev = next;
  }
  throw QuadratureError("phi_n: no convergence", std::abs(pref * prev));
}

cd phi_n_at_zero(int n, double omega) {
  check_order(n);
  if (!(omega > 0)) throw ConfigError("phi_n_at_zero: omega must be > 0");
  double pref = (n % 2 ? -1.0 : 1.0) / factorial(n - 1);
  return pref * 0.5 * half_gamma(n) * std::polar(1.0, -kPi * n / 4) * std::pow(omega, -0.5 * n);
}

ErdelyiConstants erdelyi_constants(int n) {
  check_order(n);
  ErdelyiConstants e;
  e.n = n;
  if (n == 1) {
    e.a = kSqrtPi / 2;
    e.b = 0.5;
    e.c = kSqrtPi / 4;
  } else {
    e.a = 0.5 * half_gamma(n) / factorial(n - 1);
    e.b = 0.25 * half_gamma(n - 1) / factorial(n - 2);
    e.c = 0.25 * half_gamma(n) / factorial(n - 1);
  }
  e.K = (e.b + std::sqrt(e.b * e.b + 4 * e.a * e.c)) / (2 * e.a);
  return e;
}

double ErdelyiConstants::L(double delta) const {
  if (!(delta > 0.5 * n && delta < 0.5 * (n + 1)))
    throw ConfigError("L_n: delta must lie strictly inside (n/2, (n+1)/2)");
  return a * std::pow(K, 2 * delta - n);
}

double L_n(int n, double delta) { return erdelyi_constants(n).L(delta); }

PhiBoundCheck check_phi_bound(int n, double delta, double s, double omega, double quad_tol,
                              double allowance) {
  if (!(s > 0)) throw ConfigError("check_phi_bound: s must be > 0");
  PhiBoundCheck r;
  r.rhs = L_n(n, delta) * std::pow(s, n - 2 * delta) * std::pow(omega, -delta);
  r.lhs = std::abs(phi_n(n, s, omega, quad_tol));
  if (allowance < 0) allowance = quad_tol;
  r.pass = r.lhs <= r.rhs + allowance;
  return r;
}

}  // namespace oscillax
