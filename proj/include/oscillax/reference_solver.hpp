#pragma once

#include <vector>

#include "oscillax/bands.hpp"

namespace oscillax {

// Periodic grid x_j = -X + j 2X/N, j = 0..N-1.
struct SpectralGrid {
  double half_width = 0;
  int n_points = 1 << 14;
  double dt = 1e-3;

  double dx() const { return 2 * half_width / n_points; }
  double x(int j) const { return -half_width + j * dx(); }
  double nyquist() const { return 3.141592653589793 / dx(); }
};

double max_frequency(const BandFunction& u0, const BandFunction& V);
// Largest half-width whose Nyquist frequency is 4 max|p|, never below the packet-travel minimum.
SpectralGrid make_grid(const BandFunction& u0, const BandFunction& V, double t_final, int n_points = 1 << 14,
                       double dt = 1e-3);
// throws ConfigError on a grid that violates the resolution or padding requirements
void check_grid(const SpectralGrid& g, const BandFunction& u0, const BandFunction& V, double t_final);

std::vector<cd> sample(const BandFunction& f, const SpectralGrid& g);

// Strang splitting for i u_t = -u_xx + V u. The number of steps is ceil(t_final/dt).
std::vector<cd> evolve(const std::vector<cd>& u0, const std::vector<cd>& v, const SpectralGrid& g, double t_final);
std::vector<cd> evolve(const BandFunction& u0, const BandFunction& V, const SpectralGrid& g, double t_final);

double l2_norm(const std::vector<cd>& u, const SpectralGrid& g);

struct ResidualRow {
  double epsilon = 0;
  double residual = 0;
};
struct ResidualTable {
  std::vector<ResidualRow> rows;
  double slope = 0;  // least squares of log residual against log epsilon (positive epsilon only)
  double r2 = 0;
  double s1_peak = 0;  // max |S1(t)u0| over the grid, the scale for relative residuals
};

// sup over the grid of |u_eps(t) - S1(t)u0 - eps s2_eval(t)/2pi|, with the solver run on eps V.
// The 1/2pi is the convolution-theorem factor absent from the amplitude W.
ResidualTable dyson_residual(const BandFunction& u0, const BandFunction& V, const SpectralGrid& g, double t,
                             const std::vector<double>& epsilons, double tol = 1e-11);

}  // namespace oscillax
