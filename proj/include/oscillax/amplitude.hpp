#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oscillax/bands.hpp"
#include "oscillax/dyson.hpp"
#include "oscillax/expansion.hpp"

namespace oscillax {

// C^1 extension of y -> V^(y)/y.
// When 0 lies in [a,b] the potential profile must carry the factor (s - s0)
// with s0 the profile coordinate of y = 0; Tilde V is then itself a band function.
class TildeV {
 public:
  TildeV() = default;
  explicit TildeV(const BandFunction& potential);

  const BandFunction& base() const { return base_; }
  double lo() const { return base_.lo(); }
  double hi() const { return base_.hi(); }
  cd eval(double y) const;
  cd deriv(double y) const;
  // max(sup |Tilde V|, sup |Tilde V'|) on a 4096-point grid
  double w1_norm() const;

 private:
  BandFunction base_;
  bool factored_ = false;
  BandFunction factor_;
};

inline double q_of(double y, double p) { return (p - y) * (p - y) - p * p; }
inline double q_tilde(double y, double p) { return 2 * (y - 2 * p) * (y - p); }

// W1(p) = -int Tilde V(y) u0^(p-y) / (y - 2p) dy
cd w1_eval(const TildeV& tv, const BandFunction& u0, double p, double tol = 1e-12);
// W2(t,p) = -i int d/dy[Tilde V u0^(p-.) / q_tilde](y) e^{-it q(y,p)} dy
cd w2_eval(const TildeV& tv, const BandFunction& u0, double t, double p, double tol = 1e-12);

struct C3Constants {
  double c3_tilde = 0, c3 = 0;
};
C3Constants c3_constants(double a, double b, double p1, double p2, double eps);

double default_eps(double p1, double p2);
// p in [p1+a, p2+b] and p outside [a/2 - eps, b/2 + eps]
bool admissible(double a, double b, double p1, double p2, double eps, double p);

struct RefinedReport {
  double t = 0, x = 0, xi = 0;
  cd value = 0;
  cd leading = 0;
  double bound = 0;
  double allowance = 0;
  bool pass = false;
};

RefinedReport verify_theorem_6_9(const TildeV& tv, const BandFunction& u0, double t, double x, double delta1,
                                 double eps, double delta2 = 2.25, double tol = kBoundTol);
// reuse a precomputed W(t,.) profile
RefinedReport verify_theorem_6_9(const TildeV& tv, const BandFunction& u0, const WProfile& w, double x,
                                 double delta1, double eps, double delta2 = 2.25, double tol = kBoundTol);

struct PositivityReport {
  bool hypotheses_ok = false;
  std::string reason;  // why the check abstained
  std::vector<std::pair<double, double>> intervals;
  std::vector<bool> verified;  // |W1| > 0 at 32 interior samples of each interval
  double min_abs_w1 = 0;
  // sample with the largest |W1|, a natural direction for decay fits
  double best_p = 0;
  double best_abs_w1 = 0;
};
PositivityReport positivity_intervals(const TildeV& tv, const BandFunction& u0, double eps);

}  // namespace oscillax
