#include "oscillax/dyson.hpp"

#include <cmath>
#include <numbers>

#include "oscillax/errors.hpp"
#include "oscillax/osc_oracle.hpp"
#include "oscillax/parallel.hpp"

namespace oscillax {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);
const cd kLeadPhase = std::polar(1.0, -kPi / 4) / (2 * kSqrtPi);

// int_0^t e^{-i tau q} dtau
cd kernel_e(double t, double q) {
  double h = 0.5 * t * q;
  double sinc = std::abs(h) < 1e-4 ? 1 - h * h / 6 : std::sin(h) / h;
  return t * sinc * std::polar(1.0, -h);
}

// int_0^t tau e^{-i tau q} dtau
cd kernel_f(double t, double q) {
  double th = t * q;
  if (std::abs(th) < 1) {
    cd term = 1, sum = 0;
    for (int k = 0; k < 30; ++k) {
      if (k > 0) term *= cd(0, -th) / double(k);
      sum += term / double(k + 2);
    }
    return t * t * sum;
  }
  cd e = std::polar(1.0, -th);
  return t * t * (e * (cd(0, 1) / th + 1 / (th * th)) - 1 / (th * th));
}

// max |q(y,p)| = |y (y - 2p)| over [lo, hi]
double max_abs_q(double lo, double hi, double p) {
  auto q = [p](double y) { return std::abs(y * (y - 2 * p)); };
  double m = std::max(q(lo), q(hi));
  if (p > lo && p < hi) m = std::max(m, q(p));
  return m;
}

// max |y - p| over [lo, hi]
double max_abs_dist(double lo, double hi, double p) { return std::max(std::abs(lo - p), std::abs(hi - p)); }

cd tau_integral(const AmplitudeW& W, double t, double p, bool derivative) {
  auto [lo, hi] = W.inner_interval(p);
  if (!(hi > lo) || t <= 0 || W.potential.is_zero() || W.initial.is_zero()) return 0;
  const BandFunction& V = W.potential;
  const BandFunction& u = W.initial;
  const double inner_tol = 0.1 * W.quad_tol / std::max(1.0, t);
  auto inner = [&](double tau) -> cd {
    Amplitude amp;
    if (!derivative)
      amp = [&](double y) { return V.fourier(y) * u.fourier(p - y); };
    else
      amp = [&, tau](double y) {
        cd v = V.fourier(y);
        if (v == cd(0)) return cd(0);
        return v * (u.fourier_deriv(1, p - y) + cd(0, 2 * tau * y) * u.fourier(p - y));
      };
    auto r = integrate({amp, lo, hi, tau, p}, inner_tol);
    if (!r.ok) throw QuadratureError("W inner integral failed at tau=" + std::to_string(tau) + " p=" + std::to_string(p));
    return r.value * std::polar(1.0, tau * p * p);
  };
  double freq = max_abs_q(lo, hi, p);
  cd total = 0;
  double split = std::min(t, 1.0);
  for (auto [a, b] : {std::pair{0.0, split}, std::pair{split, t}}) {
    if (b <= a) continue;
    auto r = integrate_time_kernel(inner, a, b, W.quad_tol, freq);
    if (!r.ok) throw QuadratureError("W tau integral failed at p=" + std::to_string(p));
    total += r.value;
  }
  return cd(0, -1) * total;
}

}  // namespace

std::pair<double, double> AmplitudeW::inner_interval(double p) const {
  return {std::max(potential.lo(), p - initial.hi()), std::min(potential.hi(), p - initial.lo())};
}

cd s1_eval(const BandFunction& u0, double t, double x, double tol) {
  if (!(t > 0)) throw ConfigError("s1_eval requires t > 0");
  if (u0.is_zero()) return 0;
  double xi = x / (2 * t);
  OscillatoryIntegral oi{[&u0](double p) { return u0.fourier(p) / (2 * kPi); }, u0.lo(), u0.hi(), t, xi};
  return std::polar(1.0, x * xi / 2) * integrate_value(oi, tol);
}

cd s1_leading(const BandFunction& u0, double t, double x) {
  return dyson_leading(u0.fourier(x / (2 * t)), t, x);
}

cd dyson_leading(cd w_at_xi, double t, double x) {
  if (w_at_xi == cd(0)) return 0;
  return kLeadPhase * std::polar(1.0, x * x / (4 * t)) * w_at_xi / std::sqrt(t);
}

cd w_eval(const AmplitudeW& W, double t, double p) { return tau_integral(W, t, p, false); }

cd w_deriv_p(const AmplitudeW& W, double t, double p) {
  if (W.initial.smoothness_order() < 1) throw ConfigError("w_deriv_p requires a C^1 initial profile");
  return tau_integral(W, t, p, true);
}

cd w_eval_closed(const AmplitudeW& W, double t, double p) {
  auto [lo, hi] = W.inner_interval(p);
  if (!(hi > lo) || t <= 0 || W.potential.is_zero() || W.initial.is_zero()) return 0;
  const BandFunction& V = W.potential;
  const BandFunction& u = W.initial;
  auto f = [&](double y) {
    cd v = V.fourier(y);
    if (v == cd(0)) return cd(0);
    return v * u.fourier(p - y) * kernel_e(t, y * (y - 2 * p));
  };
  double freq = 2 * t * max_abs_dist(lo, hi, p);
  return cd(0, -1) * integrate_kernel_value(f, lo, hi, W.quad_tol, freq);
}

cd w_deriv_p_closed(const AmplitudeW& W, double t, double p) {
  if (W.initial.smoothness_order() < 1) throw ConfigError("w_deriv_p requires a C^1 initial profile");
  auto [lo, hi] = W.inner_interval(p);
  if (!(hi > lo) || t <= 0 || W.potential.is_zero() || W.initial.is_zero()) return 0;
  const BandFunction& V = W.potential;
  const BandFunction& u = W.initial;
  auto f = [&](double y) {
    cd v = V.fourier(y);
    if (v == cd(0)) return cd(0);
    double q = y * (y - 2 * p);
    return v * (cd(0, -1) * u.fourier_deriv(1, p - y) * kernel_e(t, q) + 2 * y * u.fourier(p - y) * kernel_f(t, q));
  };
  double freq = 2 * t * max_abs_dist(lo, hi, p);
  return integrate_kernel_value(f, lo, hi, W.quad_tol, freq);
}

namespace {

constexpr int kChebDegree = 32;

std::vector<cd> cheb_coefficients(const std::vector<cd>& vals) {
  // vals at x_j = cos(pi j / n), j = 0..n
  const int n = kChebDegree;
  std::vector<cd> c(n + 1);
  for (int k = 0; k <= n; ++k) {
    cd s = 0;
    for (int j = 0; j <= n; ++j) {
      double w = (j == 0 || j == n) ? 0.5 : 1.0;
      s += w * vals[j] * std::cos(kPi * j * k / n);
    }
    c[k] = s * (2.0 / n);
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return c;
}

}  // namespace

WProfile::WProfile(const AmplitudeW& W, double t, double tol) : t_(t), lo_(W.support_lo()), hi_(W.support_hi()) {
  const int n = kChebDegree;
  struct Pending {
    double lo, hi;
  };
  std::vector<Pending> pending;
  const int initial = 8;
  for (int i = 0; i < initial; ++i)
    pending.push_back({lo_ + (hi_ - lo_) * i / initial, lo_ + (hi_ - lo_) * (i + 1) / initial});
  const double min_width = (hi_ - lo_) / (1 << 16);
  std::vector<Panel> done;
  while (!pending.empty()) {
    std::vector<cd> vals(pending.size() * (n + 1));
    parallel_for(vals.size(), [&](std::size_t idx) {
      const Pending& pn = pending[idx / (n + 1)];
      int j = static_cast<int>(idx % (n + 1));
      double x = std::cos(kPi * j / n);
      double p = 0.5 * (pn.lo + pn.hi) + 0.5 * (pn.hi - pn.lo) * x;
      vals[idx] = w_eval_closed(W, t, p);
    });
    std::vector<Pending> next;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      std::vector<cd> v(vals.begin() + k * (n + 1), vals.begin() + (k + 1) * (n + 1));
      auto coef = cheb_coefficients(v);
      double tail = std::max({std::abs(coef[n]), std::abs(coef[n - 1]), std::abs(coef[n - 2])});
      const Pending& pn = pending[k];
      if (tail <= tol || pn.hi - pn.lo <= min_width) {
        done.push_back({pn.lo, pn.hi, std::move(coef)});
      } else {
        double mid = 0.5 * (pn.lo + pn.hi);
        next.push_back({pn.lo, mid});
        next.push_back({mid, pn.hi});
      }
    }
    pending = std::move(next);
  }
  std::sort(done.begin(), done.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  panels_ = std::move(done);
  for (const auto& pn : panels_) breaks_.push_back(pn.hi);
}

cd WProfile::operator()(double p) const {
  if (p <= lo_ || p >= hi_ || panels_.empty()) return 0;
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), p);
  if (it == breaks_.end()) --it;
  const Panel& pn = panels_[it - breaks_.begin()];
  double x = (2 * p - (pn.lo + pn.hi)) / (pn.hi - pn.lo);
  // Clenshaw
  cd b1 = 0, b2 = 0;
  for (int k = kChebDegree; k >= 1; --k) {
    cd b0 = pn.coef[k] + 2 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return pn.coef[0] + x * b1 - b2;
}

cd s2_eval(const WProfile& w, double x, double tol) {
  double t = w.t();
  if (!(t > 0)) throw ConfigError("s2_eval requires t > 0");
  if (w.panels() == 0) return 0;
  double xi = x / (2 * t);
  OscillatoryIntegral oi{[&w](double p) { return w(p) / (2 * kPi); }, w.lo(), w.hi(), t, xi};
  return std::polar(1.0, x * xi / 2) * integrate_value(oi, tol);
}

cd s2_eval(const AmplitudeW& W, double t, double x, double tol) {
  if (W.potential.is_zero() || W.initial.is_zero()) return 0;
  return s2_eval(WProfile(W, t, 0.1 * tol), x, tol);
}

MConstants m_constants(double a, double b, double delta2) {
  check_delta2(delta2);
  double base2 = 3 * kSqrtPi / 8 + std::sqrt(9 * kPi / 64 + 0.5);
  double w = b - a;
  double g = std::pow(base2, 2 * delta2 - 4) * std::pow(w, 5 - 2 * delta2);
  double amax = std::max(std::abs(a), std::abs(b));
  MConstants m;
  m.M1 = w + 5 / ((5 - 2 * delta2) * (delta2 - 1)) * g;
  m.M2 = m.M1 + amax * w + 1 / ((15 - 6 * delta2) * (delta2 - 2)) * g * (12 + 30 * amax);
  return m;
}

double tild_c1(double delta1, double p1, double p2) { return 1 / (2 * kSqrtPi) + tild_c2(delta1, p1, p2); }

double tild_c2(double delta1, double p1, double p2) {
  check_delta1(delta1);
  double base1 = 1 / (2 * kSqrtPi) + std::sqrt(1 / (4 * kPi) + 0.5);
  return 1 / ((4 - 4 * delta1) * kSqrtPi) * std::pow(base1, 2 * delta1 - 1) * std::pow(p2 - p1, 2 - 2 * delta1);
}

CConstants c_constants(double delta1, double a, double b, double p1, double p2, double delta2) {
  MConstants m = m_constants(a, b, delta2);
  CConstants c;
  c.c1 = tild_c1(delta1, p1 + a, p2 + b) * (m.M1 + m.M2);
  c.c2 = tild_c2(delta1, p1 + a, p2 + b) * m.M2;
  return c;
}

void check_s2_hypotheses(const AmplitudeW& W) {
  if (W.initial.lo() <= 0 && W.initial.hi() >= 0) throw ConfigError("S2 estimates require 0 outside [p1,p2]");
  if (W.initial.smoothness_order() < 5) throw ConfigError("S2 estimates require an initial profile of class C^5");
  if (W.potential.smoothness_order() < 4) throw ConfigError("S2 estimates require a potential profile of class C^4");
}

std::vector<ConeRow> verify_s1_cone(const BandFunction& u0, const std::vector<double>& t_grid,
                                    const std::vector<double>& xi_grid, double delta1, double tol) {
  check_delta1(delta1);
  const double p1 = u0.lo(), p2 = u0.hi();
  const double n0 = kNormInflation * u0.sup_deriv(0), n1 = kNormInflation * u0.sup_deriv(1);
  const double C1 = tild_c1(delta1, p1, p2), C2 = tild_c2(delta1, p1, p2);
  const Cone cone{p1, p2};
  std::vector<ConeRow> rows(t_grid.size() * xi_grid.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    ConeRow& r = rows[k];
    r.t = t_grid[k / xi_grid.size()];
    r.xi = xi_grid[k % xi_grid.size()];
    r.x = 2 * r.xi * r.t;
    r.value = s1_eval(u0, r.t, r.x, tol);
    r.in_cone = cone.contains_xi(r.xi);
    r.leading = r.in_cone ? s1_leading(u0, r.t, r.x) : cd(0);
    r.cone_bound = C2 * n1 * std::pow(r.t, -delta1);
    r.allowance = 10 * tol;
    r.pass = std::abs(r.value - r.leading) <= r.cone_bound + r.allowance;
    if (r.t >= 1) {
      r.linf_checked = true;
      r.linf_bound = C1 * (n0 + n1) / std::sqrt(r.t);
      r.pass = r.pass && std::abs(r.value) <= r.linf_bound + r.allowance;
    }
  });
  return rows;
}

std::vector<ConeRow> verify_s2_cone(const AmplitudeW& W, const std::vector<double>& t_grid,
                                    const std::vector<double>& xi_grid, double delta1, double delta2,
                                    double tol) {
  check_delta1(delta1);
  check_s2_hypotheses(W);
  const double a = W.potential.lo(), b = W.potential.hi();
  const double p1 = W.initial.lo(), p2 = W.initial.hi();
  const CConstants c = c_constants(delta1, a, b, p1, p2, delta2);
  const double norms = kNormInflation * W.potential.w_norm(4) * kNormInflation * W.initial.w_norm(5);
  const Cone cone{p1 + a, p2 + b};
  std::vector<ConeRow> rows;
  for (double t : t_grid) {
    WProfile prof(W, t, 0.1 * tol);
    std::vector<ConeRow> block(xi_grid.size());
    parallel_for(block.size(), [&](std::size_t k) {
      ConeRow& r = block[k];
      r.t = t;
      r.xi = xi_grid[k];
      r.x = 2 * r.xi * t;
      r.value = s2_eval(prof, r.x, tol);
      r.in_cone = cone.contains_xi(r.xi);
      r.leading = r.in_cone ? dyson_leading(w_eval_closed(W, t, r.xi), t, r.x) : cd(0);
      r.cone_bound = c.c2 * norms * std::pow(t, -delta1);
      r.allowance = 10 * tol;
      r.pass = std::abs(r.value - r.leading) <= r.cone_bound + r.allowance;
      if (t >= 1) {
        r.linf_checked = true;
        r.linf_bound = c.c1 * norms / std::sqrt(t);
        r.pass = r.pass && std::abs(r.value) <= r.linf_bound + r.allowance;
      }
    });
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

}  // namespace oscillax
