#include "oscillax/bands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscillax/errors.hpp"
#include "oscillax/gauss.hpp"

namespace oscillax {

namespace {
constexpr double kPi = std::numbers::pi;
}

BandProfile cos_bump(int m, cd amp, int power, double root) {
  if (m < 1) throw ConfigError("cos_bump: m must be >= 1");
  if (power < 0) throw ConfigError("cos_bump: power must be >= 0");
  BandProfile p;
  p.m = m;
  p.amp = amp;
  p.power = power;
  p.root = root;
  return p;
}

cd BandProfile::eval(double s) const {
  if (std::abs(s) >= 1) return 0;
  double c = std::cos(0.5 * kPi * s);
  double c2 = c * c, v = 1;
  for (int k = 0; k < m; ++k) v *= c2;
  double d = s - root;
  for (int k = 0; k < power; ++k) v *= d;
  return amp * v;
}

Jet6 BandProfile::jet(double s) const {
  if (std::abs(s) >= 1) return Jet6{};
  constexpr int N = kMaxDeriv + 1;
  Jet6 c;
  double theta = 0.5 * kPi * s, scale = 1, fact = 1;
  for (int k = 0; k < N; ++k) {
    if (k > 0) fact *= k;
    c.c[k] = scale * std::cos(theta + 0.5 * kPi * k) / fact;
    scale *= 0.5 * kPi;
  }
  Jet6 r = pow(c, 2 * m);
  if (power > 0) r = r * pow(Jet6::variable(s - root), power);
  return r * amp;
}

cd BandProfile::deriv(int order, double s) const {
  if (order < 0 || order > kMaxDeriv) throw ConfigError("profile derivative order out of range");
  if (order == 0) return eval(s);
  return jet(s).deriv(order);
}

BandFunction::BandFunction(BandProfile profile, double lo, double hi, double center)
    : profile_(profile), lo_(lo), hi_(hi), x0_(center) {
  if (!(lo < hi)) throw ConfigError("band requires band_lo < band_hi");
}

cd BandFunction::fourier(double p) const {
  if (p <= lo_ || p >= hi_) return 0;
  cd v = profile_.eval(to_profile(p));
  if (x0_ != 0) v *= std::polar(1.0, -x0_ * p);
  return v;
}

Jet6 BandFunction::fourier_jet(double p) const {
  if (p <= lo_ || p >= hi_) return Jet6{};
  Jet6 j = profile_.jet(to_profile(p));
  double g = 2 / (hi_ - lo_), gk = 1;
  for (auto& c : j.c) {
    c *= gk;
    gk *= g;
  }
  if (x0_ != 0) {
    Jet6 e;
    cd base = std::polar(1.0, -x0_ * p), step = cd(0, -x0_);
    e.c[0] = base;
    for (int k = 1; k <= kMaxDeriv; ++k) e.c[k] = e.c[k - 1] * step / double(k);
    j = j * e;
  }
  return j;
}

cd BandFunction::fourier_deriv(int order, double p) const {
  if (order < 0 || order > kMaxDeriv || order > smoothness_order())
    throw ConfigError("derivative order " + std::to_string(order) + " exceeds profile smoothness");
  if (order == 0) return fourier(p);
  return fourier_jet(p).deriv(order);
}

cd BandFunction::spatial(double x) const {
  if (is_zero()) return 0;
  double w = hi_ - lo_;
  cd phase = std::polar(1.0, 0.5 * (lo_ + hi_) * (x - x0_));
  return (w / (4 * kPi)) * phase * profile_transform(profile_, 0.5 * w * (x0_ - x));
}

double BandFunction::sup_deriv(int order) const {
  constexpr int n = 4096;
  double best = 0;
  for (int i = 0; i < n; ++i) {
    double p = lo_ + (hi_ - lo_) * i / (n - 1.0);
    best = std::max(best, std::abs(fourier_deriv(order, p)));
  }
  return best;
}

double BandFunction::w_norm(int k) const {
  double best = 0;
  for (int j = 0; j <= k; ++j) best = std::max(best, sup_deriv(j));
  return best;
}

cd fourier_eval(const BandFunction& f, double p) { return f.fourier(p); }
cd fourier_deriv(const BandFunction& f, int order, double p) { return f.fourier_deriv(order, p); }
cd spatial_eval(const BandFunction& f, double x) { return f.spatial(x); }

namespace {

cd composite_transform(const BandProfile& phi, double k, int panels) {
  const GaussRule& g = gauss_legendre(64);
  double h = 2.0 / panels;
  cd sum = 0;
  for (int j = 0; j < panels; ++j) {
    double mid = -1 + h * (j + 0.5);
    cd part = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      double s = mid + 0.5 * h * g.x[i];
      part += g.w[i] * phi.eval(s) * std::polar(1.0, -k * s);
    }
    sum += 0.5 * h * part;
  }
  return sum;
}

}  // namespace

cd profile_transform(const BandProfile& phi, double k, double tol) {
  if (phi.is_zero()) return 0;
  int panels = 2;
  while (64.0 * panels < 4 * std::abs(k)) panels *= 2;
  cd prev = composite_transform(phi, k, panels);
  for (int it = 0; it < 14; ++it) {
    panels *= 2;
    cd next = composite_transform(phi, k, panels);
    if (std::abs(next - prev) < tol) return next;
    prev = next;
  }
  throw QuadratureError("profile transform did not converge", std::abs(prev));
}

double profile_deriv_l2sq(const BandProfile& phi) {
  const GaussRule& g = gauss_legendre(64);
  auto integrate = [&](int panels) {
    double h = 2.0 / panels, sum = 0;
    for (int j = 0; j < panels; ++j) {
      double mid = -1 + h * (j + 0.5);
      for (std::size_t i = 0; i < g.x.size(); ++i)
        sum += 0.5 * h * g.w[i] * std::norm(phi.deriv(1, mid + 0.5 * h * g.x[i]));
    }
    return sum;
  };
  double prev = integrate(8);
  for (int panels = 16; panels <= 4096; panels *= 2) {
    double next = integrate(panels);
    if (std::abs(next - prev) <= 1e-13 * std::max(1.0, next)) return next;
    prev = next;
  }
  return prev;
}

double chebyshev_tail_bound(const BandFunction& f, double c) {
  if (!(c > 0)) throw ConfigError("tail bound requires c > 0");
  return 2 / (c * c) / f.width() * profile_deriv_l2sq(f.profile());
}

TailReport verify_tail(const BandFunction& f, double c, double tol) {
  TailReport r;
  r.bound = chebyshev_tail_bound(f, c);
  if (f.is_zero()) {
    r.pass = true;
    return r;
  }
  const GaussRule& g = gauss_legendre(16);
  double h = 2 * kPi / f.width();
  double x0 = f.center();
  double u = c;
  constexpr long kMaxPanels = 200000;
  for (long panel = 0;; ++panel) {
    if (panel >= kMaxPanels) {
      r.converged = false;
      break;
    }
    double part = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      double v = u + 0.5 * h * (1 + g.x[i]);
      part += g.w[i] * (std::norm(f.spatial(x0 + v)) + std::norm(f.spatial(x0 - v)));
    }
    part *= 0.5 * h;
    r.measured += part;
    u += h;
    if (u > c + 4 * h && part * (u / h) < 0.01 * tol) break;
  }
  r.pass = r.converged && r.measured <= r.bound + tol;
  return r;
}

}  // namespace oscillax
