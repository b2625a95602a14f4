#pragma once

#include <complex>

#include "oscillax/jet.hpp"

namespace oscillax {

using cd = std::complex<double>;
constexpr int kMaxDeriv = 5;
using Jet6 = Jet<cd, kMaxDeriv + 1>;

// Template on [-1,1]:  amp * (s - root)^power * cos^{2m}(pi s / 2),  zero for |s| >= 1.
// C^{2m-1} across s = +-1.
struct BandProfile {
  int m = 3;
  int power = 0;
  double root = 0;
  cd amp = 1;

  int smoothness_order() const { return 2 * m - 1; }
  cd eval(double s) const;
  cd deriv(int order, double s) const;
  Jet6 jet(double s) const;
  bool is_zero() const { return amp == cd(0); }
};

BandProfile cos_bump(int m, cd amp = 1, int power = 0, double root = 0);

// f^(p) = phi((2p - (a+b))/(b-a)) e^{-i x0 p}, supported on [a,b].
class BandFunction {
 public:
  BandFunction() = default;
  BandFunction(BandProfile profile, double lo, double hi, double center = 0);

  const BandProfile& profile() const { return profile_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double center() const { return x0_; }
  int smoothness_order() const { return profile_.smoothness_order(); }
  bool is_zero() const { return profile_.is_zero(); }

  // profile coordinate of frequency p
  double to_profile(double p) const { return (2 * p - (lo_ + hi_)) / (hi_ - lo_); }

  cd fourier(double p) const;
  cd fourier_deriv(int order, double p) const;
  // all derivatives up to kMaxDeriv at p (no smoothness check)
  Jet6 fourier_jet(double p) const;
  cd spatial(double x) const;

  // max_{grid} |f^(order)| on a 4096-point uniform grid over [lo, hi]
  double sup_deriv(int order) const;
  // max_{j <= k} sup_deriv(j)
  double w_norm(int k) const;

 private:
  BandProfile profile_;
  double lo_ = -1, hi_ = 1, x0_ = 0;
};

cd fourier_eval(const BandFunction& f, double p);
cd fourier_deriv(const BandFunction& f, int order, double p);
cd spatial_eval(const BandFunction& f, double x);

// phi^(k) = int_{-1}^{1} phi(s) e^{-iks} ds, Gauss-Legendre refined until successive values agree to tol
cd profile_transform(const BandProfile& phi, double k, double tol = 1e-10);

// ||phi'||^2 on (-1,1)
double profile_deriv_l2sq(const BandProfile& phi);

double chebyshev_tail_bound(const BandFunction& f, double c);

struct TailReport {
  double measured = 0;
  double bound = 0;
  bool pass = false;
  bool converged = true;
};
TailReport verify_tail(const BandFunction& f, double c, double tol = 1e-10);

}  // namespace oscillax
