#pragma once

#include <complex>

#include "oscillax/bands.hpp"

namespace oscillax {

constexpr double kBoundTol = 1e-9;
constexpr double kSweepTol = 1e-7;
// sup norms from the sampling grid are inflated by this factor before entering a bound
constexpr double kNormInflation = 1.01;

// sqrt(pi) e^{-i pi/4} U(p0) w^{-1/2}
cd leading_term(cd u_at_p0, double omega);
cd leading_term(const BandFunction& U, double omega, double p0);
// (sqrt(pi)/4) e^{-3i pi/4} U''(p0) w^{-3/2}
cd second_term(cd u2_at_p0, double omega);
cd second_term(const BandFunction& U, double omega, double p0);

double erdelyi_c1(double delta1);
double erdelyi_c2(double delta2);
double cor_c1(double delta1, double p1, double p2);
double cor_c2(double delta1, double p1, double p2);
double cor_c3(double delta2, double p1, double p2);

void check_delta1(double delta1);
void check_delta2(double delta2);

struct ExpansionReport {
  cd oracle = 0;
  cd leading = 0;
  cd second = 0;
  cd remainder = 0;
  double bound = 0;
  double allowance = 0;  // additive oracle allowance folded into pass
  bool pass = false;
  double margin = 0;  // bound + allowance - |remainder|
};

enum class CorMode { i, ii, iii, iv };
const char* to_string(CorMode m);

ExpansionReport verify_theorem_4_3(const BandFunction& U, double omega, double p0, double delta1,
                                   double tol = kBoundTol);
ExpansionReport verify_theorem_4_6(const BandFunction& U, double omega, double p0, double delta2,
                                   double tol = kBoundTol);
ExpansionReport verify_corollary_4_7(const BandFunction& U, double omega, double p0, CorMode mode,
                                     double delta1, double delta2, double tol = kBoundTol);

}  // namespace oscillax
