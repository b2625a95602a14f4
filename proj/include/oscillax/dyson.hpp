#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "oscillax/bands.hpp"
#include "oscillax/expansion.hpp"

namespace oscillax {

// {(t,x) : t > 0, 2 p_lo <= x/t <= 2 p_hi}
struct Cone {
  double p_lo = 0, p_hi = 0;
  bool contains(double t, double x) const { return t > 0 && contains_xi(x / (2 * t)); }
  bool contains_xi(double xi) const { return xi >= p_lo && xi <= p_hi; }
};

// {(t,x) : x/t = 2 p_bar}
struct Direction {
  double p_bar = 0;
  bool contains(double t, double x, double rel = 1e-12) const {
    return t > 0 && std::abs(x / t - 2 * p_bar) <= rel * std::max(1.0, std::abs(2 * p_bar));
  }
  double x_at(double t) const { return 2 * p_bar * t; }
};

// Fourier amplitude of the second Dyson term:
// W(t,p) = -i int_0^t int_a^b V^(y) u0^(p-y) e^{-i tau (p-y)^2} dy e^{i tau p^2} dtau
struct AmplitudeW {
  BandFunction potential;
  BandFunction initial;
  double quad_tol = 1e-10;

  double support_lo() const { return initial.lo() + potential.lo(); }
  double support_hi() const { return initial.hi() + potential.hi(); }
  // I_p = [a,b] intersected with [p - p2, p - p1]; empty when first >= second
  std::pair<double, double> inner_interval(double p) const;
};

// (S1(t) u0)(x) = (1/2pi) int u0^(p) e^{-itp^2 + ixp} dp
cd s1_eval(const BandFunction& u0, double t, double x, double tol = kBoundTol);
// (1/2 sqrt(pi)) e^{-i pi/4} e^{ix^2/4t} u0^(x/2t) t^{-1/2}
cd s1_leading(const BandFunction& u0, double t, double x);

// iterated quadrature: inner y over I_p, outer tau over [0,t] split at 1
cd w_eval(const AmplitudeW& W, double t, double p);
cd w_deriv_p(const AmplitudeW& W, double t, double p);

// same quantities with the tau-integral done in closed form (single y-quadrature);
// cost grows like t instead of t^2
cd w_eval_closed(const AmplitudeW& W, double t, double p);
cd w_deriv_p_closed(const AmplitudeW& W, double t, double p);

// Piecewise Chebyshev interpolant of W(t,.) over [p1+a, p2+b], adaptively refined
// until the trailing coefficients on every panel fall below tol.
class WProfile {
 public:
  WProfile() = default;
  WProfile(const AmplitudeW& W, double t, double tol = 1e-10);
  double t() const { return t_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t panels() const { return panels_.size(); }
  cd operator()(double p) const;

 private:
  struct Panel {
    double lo, hi;
    std::vector<cd> coef;
  };
  double t_ = 0, lo_ = 0, hi_ = 0;
  std::vector<Panel> panels_;
  std::vector<double> breaks_;
};

// (S2(t) u0)(x) = (1/2pi) int W(t,p) e^{-itp^2 + ixp} dp
cd s2_eval(const WProfile& w, double x, double tol = kBoundTol);
cd s2_eval(const AmplitudeW& W, double t, double x, double tol = kBoundTol);
// (1/2 sqrt(pi)) e^{-i pi/4} e^{ix^2/4t} w t^{-1/2}
cd dyson_leading(cd w_at_xi, double t, double x);

struct MConstants {
  double M1 = 0, M2 = 0;
};
MConstants m_constants(double a, double b, double delta2);

double tild_c1(double delta1, double p1, double p2);
double tild_c2(double delta1, double p1, double p2);

struct CConstants {
  double c1 = 0, c2 = 0;
};
CConstants c_constants(double delta1, double a, double b, double p1, double p2, double delta2 = 2.25);

struct ConeRow {
  double t = 0, x = 0, xi = 0;
  cd value = 0;
  cd leading = 0;  // zero outside the cone
  bool in_cone = false;
  double cone_bound = 0;  // inside: bound on |value - leading|; outside: bound on |value|
  bool linf_checked = false;  // t >= 1
  double linf_bound = 0;
  double allowance = 0;
  bool pass = false;
};

std::vector<ConeRow> verify_s1_cone(const BandFunction& u0, const std::vector<double>& t_grid,
                                    const std::vector<double>& xi_grid, double delta1,
                                    double tol = kBoundTol);
std::vector<ConeRow> verify_s2_cone(const AmplitudeW& W, const std::vector<double>& t_grid,
                                    const std::vector<double>& xi_grid, double delta1, double delta2,
                                    double tol = kBoundTol);

// s2 hypotheses: 0 outside [p1,p2], initial C^5, potential C^4
void check_s2_hypotheses(const AmplitudeW& W);

}  // namespace oscillax
