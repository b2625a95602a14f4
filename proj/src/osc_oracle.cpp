#include "oscillax/osc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "oscillax/errors.hpp"
#include "oscillax/gauss.hpp"

namespace oscillax {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
// 32 nodes over at most 3.2 wavelengths
constexpr double kWavelengthsPerPanel = 3.2;

struct Panel {
  double lo, hi;
};

// Panel boundaries; max_width(x) is the widest admissible panel starting at x.
template <class MaxWidth>
std::vector<Panel> initial_panels(double lo, double hi, MaxWidth max_width) {
  std::vector<Panel> out;
  double x = lo;
  double span = hi - lo;
  while (x < hi) {
    double h = std::min(max_width(x), hi - x);
    if (hi - x - h < 1e-12 * span) h = hi - x;
    out.push_back({x, x + h});
    x += h;
    if (out.size() > static_cast<std::size_t>(kMaxPanels)) break;
  }
  return out;
}

template <class F>
PhaseIntegralResult adaptive(const F& f, double lo, double hi, double tol, std::vector<Panel> panels) {
  PhaseIntegralResult res;
  if (!(tol > 0)) throw ConfigError("integrate: tol must be > 0");
  if (hi <= lo) return res;
  const GaussRule& g32 = gauss_legendre(32);
  const GaussRule& g16 = gauss_legendre(16);
  const double span = hi - lo;
  if (panels.size() > static_cast<std::size_t>(kMaxPanels)) {
    res.ok = false;
    res.panels_used = kMaxPanels;
    return res;
  }
  // depth-first, left to right
  std::vector<Panel> stack(panels.rbegin(), panels.rend());
  long used = 0;
  while (!stack.empty()) {
    Panel pn = stack.back();
    stack.pop_back();
    double mid = 0.5 * (pn.lo + pn.hi), half = 0.5 * (pn.hi - pn.lo);
    cd a32 = 0, a16 = 0;
    double mass = 0;
    for (std::size_t i = 0; i < g32.x.size(); ++i) {
      cd v = f(mid + half * g32.x[i]);
      a32 += g32.w[i] * v;
      mass += g32.w[i] * std::abs(v);
    }
    for (std::size_t i = 0; i < g16.x.size(); ++i) a16 += g16.w[i] * f(mid + half * g16.x[i]);
    a32 *= half;
    a16 *= half;
    double err = std::abs(a32 - a16);
    ++used;
    double share = std::max(tol * (pn.hi - pn.lo) / span, 64 * 2.2e-16 * half * mass);
    bool budget_left = used + static_cast<long>(stack.size()) + 2 <= kMaxPanels;
    if (err <= share || half < 1e-14 * std::max(1.0, std::abs(mid)) || !budget_left) {
      if (err > share) res.ok = false;
      res.value += a32;
      res.abs_error_estimate += err;
      continue;
    }
    stack.push_back({mid, pn.hi});
    stack.push_back({pn.lo, mid});
  }
  res.panels_used = used;
  return res;
}

}  // namespace

PhaseIntegralResult integrate(const OscillatoryIntegral& oi, double tol) {
  if (!(oi.omega >= 0)) throw ConfigError("integrate: omega must be >= 0");
  if (oi.omega > kMaxOmega) {
    std::ostringstream os;
    os << "integrate: omega = " << oi.omega << " exceeds the supported limit " << kMaxOmega;
    throw ConfigError(os.str());
  }
  double lo = oi.support_lo, hi = oi.support_hi;
  if (!(hi > lo) || !oi.amplitude) return {};
  const double w = oi.omega, p0 = oi.p0;
  const double c = kWavelengthsPerPanel * kPi / std::max(w, 1e-300);
  auto width = [&](double x) {
    if (w == 0) return (hi - lo);
    // 2 w (d + h) h <= 2 pi * kWavelengthsPerPanel, d = |x - p0|
    double d = std::abs(x - p0);
    return 0.5 * (-d + std::sqrt(d * d + 4 * c));
  };
  auto panels = initial_panels(lo, hi, width);
  auto f = [&](double p) {
    double d = p - p0;
    return oi.amplitude(p) * std::polar(1.0, -w * d * d);
  };
  return adaptive(f, lo, hi, tol, std::move(panels));
}

PhaseIntegralResult integrate_time_kernel(const Amplitude& f, double t_lo, double t_hi, double tol,
                                          double max_freq) {
  if (!(t_lo <= t_hi)) throw ConfigError("integrate_time_kernel: requires t_lo <= t_hi");
  if (t_hi == t_lo) return {};
  double h = max_freq > 0 ? 2 * kPi * kWavelengthsPerPanel / max_freq : (t_hi - t_lo);
  auto panels = initial_panels(t_lo, t_hi, [&](double) { return h; });
  return adaptive(f, t_lo, t_hi, tol, std::move(panels));
}

std::complex<double> integrate_value(const OscillatoryIntegral& oi, double tol) {
  auto r = integrate(oi, tol);
  if (!r.ok) throw QuadratureError("oscillatory integral exceeded its panel budget", std::abs(r.value));
  return r.value;
}

std::complex<double> integrate_kernel_value(const Amplitude& f, double lo, double hi, double tol,
                                            double max_freq) {
  auto r = integrate_time_kernel(f, lo, hi, tol, max_freq);
  if (!r.ok) throw QuadratureError("kernel integral exceeded its panel budget", std::abs(r.value));
  return r.value;
}

}  // namespace oscillax
