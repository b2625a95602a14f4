#include "oscillax/expansion.hpp"

#include <cmath>
#include <numbers>

#include "oscillax/errors.hpp"
#include "oscillax/osc_oracle.hpp"
#include "oscillax/phase_primitives.hpp"

namespace oscillax {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

cd oracle_value(const BandFunction& U, double omega, double p0, double tol) {
  OscillatoryIntegral oi{[&U](double p) { return U.fourier(p); }, U.lo(), U.hi(), omega, p0};
  return integrate_value(oi, tol);
}

ExpansionReport finish(ExpansionReport r, double tol) {
  r.remainder = r.oracle - r.leading - r.second;
  r.allowance = 10 * tol;
  r.margin = r.bound + r.allowance - std::abs(r.remainder);
  r.pass = r.margin >= 0;
  return r;
}

}  // namespace

cd leading_term(cd u_at_p0, double omega) {
  if (!(omega > 0)) throw ConfigError("leading_term: omega must be > 0");
  if (u_at_p0 == cd(0)) return 0;
  return kSqrtPi * std::polar(1.0, -kPi / 4) * u_at_p0 / std::sqrt(omega);
}

cd leading_term(const BandFunction& U, double omega, double p0) {
  return leading_term(U.fourier(p0), omega);
}

cd second_term(cd u2_at_p0, double omega) {
  if (!(omega > 0)) throw ConfigError("second_term: omega must be > 0");
  if (u2_at_p0 == cd(0)) return 0;
  return 0.25 * kSqrtPi * std::polar(1.0, -0.75 * kPi) * u2_at_p0 * std::pow(omega, -1.5);
}

cd second_term(const BandFunction& U, double omega, double p0) {
  if (U.smoothness_order() < 2) throw ConfigError("second_term: profile smoothness below 2");
  return second_term(U.fourier_deriv(2, p0), omega);
}

void check_delta1(double delta1) {
  if (!(delta1 > 0.5 && delta1 < 1)) throw ConfigError("delta1 must lie in (1/2, 1)");
}

void check_delta2(double delta2) {
  if (!(delta2 > 2 && delta2 < 2.5)) throw ConfigError("delta2 must lie in (2, 5/2)");
}

double erdelyi_c1(double delta1) {
  check_delta1(delta1);
  return L_n(1, delta1) / (1 - delta1);
}

double erdelyi_c2(double delta2) {
  check_delta2(delta2);
  return 2 * L_n(4, delta2) / (5 - 2 * delta2);
}

double cor_c1(double delta1, double p1, double p2) { return kSqrtPi + cor_c2(delta1, p1, p2); }

double cor_c2(double delta1, double p1, double p2) {
  return erdelyi_c1(delta1) * std::pow(p2 - p1, 2 - 2 * delta1);
}

double cor_c3(double delta2, double p1, double p2) {
  return erdelyi_c2(delta2) * std::pow(p2 - p1, 5 - 2 * delta2);
}

const char* to_string(CorMode m) {
  switch (m) {
    case CorMode::i: return "i";
    case CorMode::ii: return "ii";
    case CorMode::iii: return "iii";
    case CorMode::iv: return "iv";
  }
  return "?";
}

ExpansionReport verify_theorem_4_3(const BandFunction& U, double omega, double p0, double delta1,
                                   double tol) {
  if (U.smoothness_order() < 1) throw ConfigError("one-term expansion needs a C^1 amplitude");
  ExpansionReport r;
  r.oracle = oracle_value(U, omega, p0, tol);
  r.leading = leading_term(U, omega, p0);
  r.bound = erdelyi_c1(delta1) * std::pow(U.width(), 2 - 2 * delta1) * kNormInflation *
            U.sup_deriv(1) * std::pow(omega, -delta1);
  return finish(r, tol);
}

ExpansionReport verify_theorem_4_6(const BandFunction& U, double omega, double p0, double delta2,
                                   double tol) {
  if (U.smoothness_order() < 4) throw ConfigError("two-term expansion needs a C^4 amplitude");
  ExpansionReport r;
  r.oracle = oracle_value(U, omega, p0, tol);
  r.leading = leading_term(U, omega, p0);
  r.second = second_term(U, omega, p0);
  r.bound = erdelyi_c2(delta2) * std::pow(U.width(), 5 - 2 * delta2) * kNormInflation *
            U.sup_deriv(4) * std::pow(omega, -delta2);
  return finish(r, tol);
}

ExpansionReport verify_corollary_4_7(const BandFunction& U, double omega, double p0, CorMode mode,
                                     double delta1, double delta2, double tol) {
  const double p1 = U.lo(), p2 = U.hi();
  const bool inside = p0 >= p1 && p0 <= p2;
  ExpansionReport r;
  switch (mode) {
    case CorMode::i:
      if (!(omega >= 1)) throw ConfigError("corollary mode i requires omega >= 1");
      r.bound = cor_c1(delta1, p1, p2) * kNormInflation * (U.sup_deriv(0) + U.sup_deriv(1)) /
                std::sqrt(omega);
      break;
    case CorMode::ii:
      if (!inside) throw ConfigError("corollary mode ii requires p0 in [p1,p2]");
      r.leading = leading_term(U, omega, p0);
      r.bound = cor_c2(delta1, p1, p2) * kNormInflation * U.sup_deriv(1) * std::pow(omega, -delta1);
      break;
    case CorMode::iii:
      if (inside) throw ConfigError("corollary mode iii requires p0 outside [p1,p2]");
      r.bound = cor_c2(delta1, p1, p2) * kNormInflation * U.sup_deriv(1) * std::pow(omega, -delta1);
      break;
    case CorMode::iv:
      if (inside) throw ConfigError("corollary mode iv requires p0 outside [p1,p2]");
      if (U.smoothness_order() < 4) throw ConfigError("corollary mode iv requires a C^4 amplitude");
      r.bound = cor_c3(delta2, p1, p2) * kNormInflation * U.sup_deriv(4) * std::pow(omega, -delta2);
      break;
  }
  r.oracle = oracle_value(U, omega, p0, tol);
  return finish(r, tol);
}

}  // namespace oscillax
