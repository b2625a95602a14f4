#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oscillax/amplitude.hpp"
#include "oscillax/dyson.hpp"
#include "oscillax/reference_solver.hpp"
#include "oscillax/scenario.hpp"

namespace oscillax {

// One judged inequality lhs <= rhs. The meaning of param_a..c depends on the check
// (see README); unused parameters are NaN.
struct BoundRow {
  std::string check;
  std::string case_id;
  std::string label;
  double param_a, param_b, param_c;
  double lhs = 0, rhs = 0;
  bool pass = false;
};

// ---- bound suites
std::vector<BoundRow> phi_zero_rows(double quad_tol = 1e-12);
std::vector<BoundRow> phi_bound_rows(std::uint64_t seed, int n_cases, double quad_tol = 1e-10);
std::vector<BoundRow> tail_rows(std::uint64_t seed, int n_cases, double tol = 1e-10);
std::vector<BoundRow> bounds4_rows(std::uint64_t seed, int n_cases, double delta1, double delta2, double tol);
std::vector<BoundRow> s1_cone_rows(const BandFunction& u0, const std::vector<double>& t_grid,
                                   const std::vector<double>& xi_grid, double delta1, double tol);
// sup over a 61-point p-grid of |W| and |d_p W| against M1, M2
std::vector<BoundRow> w_bound_rows(const AmplitudeW& W, const std::vector<double>& t_list, double delta2);
std::vector<BoundRow> s2_cone_rows(const AmplitudeW& W, const std::vector<double>& t_grid,
                                   const std::vector<double>& xi_grid, double delta1, double delta2, double tol);
std::vector<BoundRow> decomposition_rows(const TildeV& tv, const BandFunction& u0, double eps, std::uint64_t seed,
                                         int n_cases);
std::vector<BoundRow> w2_uniform_rows(const TildeV& tv, const BandFunction& u0, double eps);
std::vector<BoundRow> thm69_rows(const TildeV& tv, const BandFunction& u0, const std::vector<double>& t_grid,
                                 const std::vector<double>& xi_grid, double delta1, double delta2, double eps,
                                 double tol);
std::vector<BoundRow> positivity_rows(const PositivityReport& rep);

// ---- decay fits
struct SlopeFit {
  bool ok = false;  // false: fewer than 5 samples above the floor or under 2 decades
  double slope = 0;
  double r2 = 0;
  int n_used = 0;
};
constexpr double kAmplitudeFloor = 1e-12;
SlopeFit fit_decay_slope(const std::vector<double>& t, const std::vector<double>& amp,
                         double floor = kAmplitudeFloor);
std::vector<double> log_spaced(double lo, double hi, int n);

struct SlopeRow {
  std::string quantity;
  double direction_xi = 0;
  double t_lo = 0, t_hi = 0;
  int n_samples = 0;
  SlopeFit fit;
  double expected_lo = 0, expected_hi = 0;
  bool pass = false;
};
// |S1| along x = 2 xi t
SlopeRow s1_slope(const BandFunction& u0, double xi, double t_lo, double t_hi, int n, double expected_lo,
                  double expected_hi, double tol);
// |S2| along x = 2 xi t
SlopeRow s2_slope(const AmplitudeW& W, double xi, double t_lo, double t_hi, int n, double expected_lo,
                  double expected_hi, double tol);

// ---- interpretation
struct ConeClassification {
  double free_lo = 0, free_hi = 0;        // 2 p1, 2 p2
  double shifted_lo = 0, shifted_hi = 0;  // 2 (p1 + a), 2 (p2 + b)
  bool advanced = false;                  // b > 0
  bool acceleration = false;              // a > 0
  bool deceleration = false;              // b < 0
  bool retarded = false;                  // a = -b, p1 > b
  bool reflection = false;                // a = -b, 0 < p1 < b
};
ConeClassification classify_cones(double p1, double p2, double a, double b);

// ---- space-time sweep
struct SpacetimeSample {
  double t = 0, x = 0, xi = 0;
  cd amp_s1 = 0, amp_s2 = 0;
  bool in_free_cone = false, in_shifted_cone = false;
  cd leading_s1 = 0, leading_s2 = 0;
  double bound_s1 = 0, bound_s2 = 0;  // the cone bound plus allowance that applies at this point
  bool pass_s1 = true, pass_s2 = true;
  bool thm69_admissible = false;
  cd leading_thm69 = 0;
  double bound_thm69 = 0;
  bool pass_thm69 = true;
};

struct RunResult {
  std::vector<BoundRow> bounds;
  std::vector<SpacetimeSample> spacetime;
  std::vector<SlopeRow> slopes;
  ResidualTable residual;
  bool residual_run = false;
  std::vector<std::string> summary;  // lines of summary.txt
  long violations = 0;
};

RunResult run_verify(const Scenario& s);
RunResult run_propagate(const Scenario& s);

// CSV text with the exact headers documented in the README
std::string bounds_csv(const std::vector<BoundRow>& rows);
std::string spacetime_csv(const std::vector<SpacetimeSample>& rows);
std::string slopes_csv(const std::vector<SlopeRow>& rows);
std::string residual_csv(const ResidualTable& table);
std::string fmt(double v);

}  // namespace oscillax
