#include "oscillax/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscillax/errors.hpp"
#include "oscillax/osc_oracle.hpp"
#include "oscillax/parallel.hpp"

namespace oscillax {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

void check_forbidden(const TildeV& tv, double p) {
  if (p >= tv.lo() / 2 && p <= tv.hi() / 2)
    throw ConfigError("p = " + std::to_string(p) + " lies in [a/2, b/2]");
}

}  // namespace

TildeV::TildeV(const BandFunction& potential) : base_(potential) {
  double a = potential.lo(), b = potential.hi();
  if (a <= 0 && b >= 0) {
    const BandProfile& pr = potential.profile();
    double s0 = potential.to_profile(0);
    if (!pr.is_zero() && (pr.power < 1 || std::abs(pr.root - s0) > 1e-12))
      throw ConfigError("0 lies in the potential band: profile needs power >= 1 and root at the image of y = 0");
    BandProfile f = pr;
    f.amp = pr.amp * (2 / (b - a));
    f.power = pr.power - 1;
    factor_ = BandFunction(f, a, b, potential.center());
    factored_ = true;
  }
}

cd TildeV::eval(double y) const {
  if (factored_) return factor_.fourier(y);
  if (y <= lo() || y >= hi()) return 0;
  return base_.fourier(y) / y;
}

cd TildeV::deriv(double y) const {
  if (factored_) return factor_.fourier_deriv(1, y);
  if (y <= lo() || y >= hi()) return 0;
  return (base_.fourier_jet(y) / Jet6::variable(y)).deriv(1);
}

double TildeV::w1_norm() const {
  constexpr int n = 4096;
  double best = 0;
  for (int i = 0; i <= n; ++i) {
    double y = lo() + (hi() - lo()) * i / n;
    best = std::max({best, std::abs(eval(y)), std::abs(deriv(y))});
  }
  return best;
}

cd w1_eval(const TildeV& tv, const BandFunction& u0, double p, double tol) {
  check_forbidden(tv, p);
  double lo = std::max(tv.lo(), p - u0.hi()), hi = std::min(tv.hi(), p - u0.lo());
  if (!(hi > lo) || tv.base().is_zero() || u0.is_zero()) return 0;
  auto f = [&](double y) { return tv.eval(y) * u0.fourier(p - y) / (y - 2 * p); };
  return -integrate_kernel_value(f, lo, hi, tol);
}

cd w2_eval(const TildeV& tv, const BandFunction& u0, double t, double p, double tol) {
  check_forbidden(tv, p);
  if (!(t > 0)) throw ConfigError("w2_eval requires t > 0");
  if (u0.lo() <= 0 && u0.hi() >= 0) throw ConfigError("w2_eval requires 0 outside [p1,p2]");
  double lo = std::max(tv.lo(), p - u0.hi()), hi = std::min(tv.hi(), p - u0.lo());
  if (!(hi > lo) || tv.base().is_zero() || u0.is_zero()) return 0;
  auto g1 = [&](double y) {
    double qt = q_tilde(y, p), dqt = 2 * (2 * y - 3 * p);
    cd v = tv.eval(y), u = u0.fourier(p - y);
    return (tv.deriv(y) * u - v * u0.fourier_deriv(1, p - y)) / qt - v * u * dqt / (qt * qt);
  };
  OscillatoryIntegral oi{g1, lo, hi, t, p};
  return cd(0, -1) * std::polar(1.0, t * p * p) * integrate_value(oi, tol);
}

C3Constants c3_constants(double a, double b, double p1, double p2, double eps) {
  if (p1 <= 0 && p2 >= 0) throw ConfigError("c3 requires 0 outside [p1,p2]");
  if (!(eps > 0 && eps < (p2 - p1) / 2)) throw ConfigError("eps must lie in (0, (p2-p1)/2)");
  double mn = std::min(std::abs(p1), std::abs(p2));
  double mx = std::max(std::abs(2 * a - 3 * (p2 + b)), std::abs(2 * b - 3 * (p1 + a)));
  C3Constants c;
  c.c3_tilde = (b - a) / (2 * mn) / eps + mx * (b - a) / (8 * mn * mn) / (eps * eps);
  c.c3 = c.c3_tilde / (2 * kSqrtPi);
  return c;
}

double default_eps(double p1, double p2) { return std::min(0.25, (p2 - p1) / 4); }

bool admissible(double a, double b, double p1, double p2, double eps, double p) {
  return p >= p1 + a && p <= p2 + b && (p < a / 2 - eps || p > b / 2 + eps);
}

RefinedReport verify_theorem_6_9(const TildeV& tv, const BandFunction& u0, const WProfile& w, double x,
                                 double delta1, double eps, double delta2, double tol) {
  const BandFunction& V = tv.base();
  double a = V.lo(), b = V.hi(), p1 = u0.lo(), p2 = u0.hi();
  AmplitudeW W{V, u0};
  check_s2_hypotheses(W);
  RefinedReport r;
  r.t = w.t();
  r.x = x;
  r.xi = x / (2 * r.t);
  if (!admissible(a, b, p1, p2, eps, r.xi))
    throw ConfigError("(t,x) outside the admissible region for the refined expansion");
  CConstants c = c_constants(delta1, a, b, p1, p2, delta2);
  C3Constants c3 = c3_constants(a, b, p1, p2, eps);
  double n4 = kNormInflation * V.w_norm(4), n5 = kNormInflation * u0.w_norm(5);
  double m1 = kNormInflation * tv.w1_norm() * kNormInflation * u0.w_norm(1);
  r.value = s2_eval(w, x, tol);
  r.leading = dyson_leading(w1_eval(tv, u0, r.xi), r.t, x);
  r.bound = c.c2 * n4 * n5 * std::pow(r.t, -delta1) + c3.c3 * m1 * std::pow(r.t, -1.5);
  r.allowance = 10 * tol;
  r.pass = std::abs(r.value - r.leading) <= r.bound + r.allowance;
  return r;
}

RefinedReport verify_theorem_6_9(const TildeV& tv, const BandFunction& u0, double t, double x, double delta1,
                                 double eps, double delta2, double tol) {
  AmplitudeW W{tv.base(), u0};
  return verify_theorem_6_9(tv, u0, WProfile(W, t, 0.1 * tol), x, delta1, eps, delta2, tol);
}

namespace {

// both parts strictly nonzero with a fixed sign on each side of y = 0 inside (lo, hi)
bool sign_definite(const BandFunction& f, double lo, double hi, bool skip_zero) {
  constexpr int n = 512;
  int sr[2] = {0, 0}, si[2] = {0, 0};
  for (int i = 1; i < n; ++i) {
    double y = lo + (hi - lo) * i / n;
    if (skip_zero && std::abs(y) < 1e-12) continue;
    cd v = f.fourier(y);
    int r = v.real() > 0 ? 1 : v.real() < 0 ? -1 : 0;
    int m = v.imag() > 0 ? 1 : v.imag() < 0 ? -1 : 0;
    if (r == 0 || m == 0) return false;
    int side = (skip_zero && y > 0) ? 1 : 0;
    if ((sr[side] && r != sr[side]) || (si[side] && m != si[side])) return false;
    sr[side] = r;
    si[side] = m;
  }
  return true;
}

}  // namespace

PositivityReport positivity_intervals(const TildeV& tv, const BandFunction& u0, double eps) {
  const BandFunction& V = tv.base();
  double a = V.lo(), b = V.hi(), p1 = u0.lo(), p2 = u0.hi();
  PositivityReport rep;
  if (!(p1 > b / 2 - a + eps || p2 < a / 2 - b - eps)) {
    rep.reason = "band geometry: need p1 > b/2 - a + eps or p2 < a/2 - b - eps";
    return rep;
  }
  if (!sign_definite(V, a, b, true)) {
    rep.reason = "Re or Im of the potential spectrum is not sign-definite on (a,b)";
    return rep;
  }
  if (!sign_definite(u0, p1, p2, false)) {
    rep.reason = "Re or Im of the initial spectrum is not sign-definite on (p1,p2)";
    return rep;
  }
  rep.hypotheses_ok = true;
  if (b > 0) rep.intervals.push_back({p2 + std::max(0.0, a), p2 + b});
  if (a < 0) rep.intervals.push_back({p1 + a, p1 + std::min(0.0, b)});
  rep.min_abs_w1 = INFINITY;
  for (auto [lo, hi] : rep.intervals) {
    constexpr int n = 32;
    std::vector<double> vals(n);
    parallel_for(n, [&](std::size_t i) { vals[i] = std::abs(w1_eval(tv, u0, lo + (hi - lo) * (i + 0.5) / n)); });
    double mn = *std::min_element(vals.begin(), vals.end());
    auto best = std::max_element(vals.begin(), vals.end());
    if (*best > rep.best_abs_w1) {
      rep.best_abs_w1 = *best;
      rep.best_p = lo + (hi - lo) * ((best - vals.begin()) + 0.5) / n;
    }
    rep.verified.push_back(mn > 0);
    rep.min_abs_w1 = std::min(rep.min_abs_w1, mn);
  }
  return rep;
}

}  // namespace oscillax
