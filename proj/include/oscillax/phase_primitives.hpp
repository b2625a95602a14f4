#pragma once

#include <complex>

namespace oscillax {

// n-th primitive of s -> e^{-i w s^2} vanishing at +infinity, integrated along
// the half-line z = s + t e^{-i pi/4}, t >= 0.
std::complex<double> phi_n(int n, double s, double omega, double quad_tol = 1e-10);

// Closed form at s = 0: (-1)^n/(n-1)! * Gamma(n/2)/2 * e^{-i pi n/4} * w^{-n/2}.
std::complex<double> phi_n_at_zero(int n, double omega);

struct ErdelyiConstants {
  int n = 1;
  double a = 0, b = 0, c = 0;
  double K = 0;  // positive root of a K^2 - b K - c = 0
  double L(double delta) const;
};

ErdelyiConstants erdelyi_constants(int n);

// L_n(delta) = a_n K_n^{2 delta - n}, delta strictly inside (n/2, (n+1)/2)
double L_n(int n, double delta);

struct PhiBoundCheck {
  double lhs = 0, rhs = 0;
  bool pass = false;
};

// |phi_n(s,w)| <= L_n(delta) s^{n - 2 delta} w^{-delta}, with an additive allowance
PhiBoundCheck check_phi_bound(int n, double delta, double s, double omega,
                              double quad_tol = 1e-10, double allowance = -1);

}  // namespace oscillax
