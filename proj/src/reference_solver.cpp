#include "oscillax/reference_solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <tuple>

#include "oscillax/dyson.hpp"
#include "oscillax/errors.hpp"
#include "oscillax/parallel.hpp"

namespace oscillax {

namespace {

std::mutex plan_mutex;

// F(Vu) = (1/2pi) V^ * u^, so the second Dyson term is s2_eval / 2pi
constexpr double kDysonNorm = 1 / (2 * 3.141592653589793);

struct Plans {
  fftw_plan fwd, bwd;
  fftw_complex* buf;
  explicit Plans(int n) {
    std::lock_guard lock(plan_mutex);
    buf = fftw_alloc_complex(n);
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(plan_mutex);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

std::pair<double, double> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  double n = x.size(), sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  double slope = sxy / sxx;
  double r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1;
  return {slope, r2};
}

}  // namespace

double max_frequency(const BandFunction& u0, const BandFunction& V) {
  return std::max({std::abs(u0.lo()), std::abs(u0.hi()), std::abs(u0.lo() + V.lo()), std::abs(u0.hi() + V.hi())});
}

SpectralGrid make_grid(const BandFunction& u0, const BandFunction& V, double t_final, int n_points, double dt) {
  double pmax = max_frequency(u0, V);
  SpectralGrid g;
  g.n_points = n_points;
  g.dt = dt;
  double travel = std::abs(u0.center()) + 2 * pmax * t_final + 20;
  g.half_width = std::max(travel, n_points * 3.141592653589793 / (8 * pmax));
  check_grid(g, u0, V, t_final);
  return g;
}

void check_grid(const SpectralGrid& g, const BandFunction& u0, const BandFunction& V, double t_final) {
  if (g.n_points < (1 << 10) || (g.n_points & (g.n_points - 1)))
    throw ConfigError("grid size must be a power of two and at least 1024");
  double pmax = max_frequency(u0, V);
  if (g.nyquist() < 4 * pmax * (1 - 1e-12)) throw ConfigError("grid Nyquist frequency below 4 max|p|");
  if (g.half_width < std::abs(u0.center()) + 2 * pmax * t_final + 20)
    throw ConfigError("grid half-width too small for the packet travel distance");
  if (!(g.dt > 0)) throw ConfigError("time step must be positive");
}

std::vector<cd> sample(const BandFunction& f, const SpectralGrid& g) {
  std::vector<cd> out(g.n_points);
  if (f.is_zero()) return out;
  parallel_for(out.size(), [&](std::size_t j) { out[j] = f.spatial(g.x(static_cast<int>(j))); });
  return out;
}

std::vector<cd> evolve(const std::vector<cd>& u0, const std::vector<cd>& v, const SpectralGrid& g, double t_final) {
  const int n = g.n_points;
  if (static_cast<int>(u0.size()) != n || static_cast<int>(v.size()) != n)
    throw ConfigError("field size does not match the grid");
  int steps = std::max(1, static_cast<int>(std::ceil(t_final / g.dt - 1e-9)));
  double dt = t_final / steps;
  double vmax = 0;
  for (cd z : v) vmax = std::max(vmax, std::abs(z));
  if (dt * vmax > 0.1) throw ConfigError("time step too large for the potential: dt max|V| > 0.1");

  std::vector<cd> half(n), kin(n);
  for (int j = 0; j < n; ++j) half[j] = std::exp(cd(0, -0.5 * dt) * v[j]);
  double dk = 3.141592653589793 / g.half_width;
  for (int j = 0; j < n; ++j) {
    int m = j < n / 2 ? j : j - n;
    double k = m * dk;
    kin[j] = std::polar(1.0 / n, -k * k * dt);
  }
  Plans plans(n);
  auto* buf = reinterpret_cast<cd*>(plans.buf);
  std::copy(u0.begin(), u0.end(), buf);
  for (int s = 0; s < steps; ++s) {
    for (int j = 0; j < n; ++j) buf[j] *= half[j];
    fftw_execute(plans.fwd);
    for (int j = 0; j < n; ++j) buf[j] *= kin[j];
    fftw_execute(plans.bwd);
    for (int j = 0; j < n; ++j) buf[j] *= half[j];
  }
  return std::vector<cd>(buf, buf + n);
}

std::vector<cd> evolve(const BandFunction& u0, const BandFunction& V, const SpectralGrid& g, double t_final) {
  check_grid(g, u0, V, t_final);
  return evolve(sample(u0, g), sample(V, g), g, t_final);
}

double l2_norm(const std::vector<cd>& u, const SpectralGrid& g) {
  double s = 0;
  for (cd z : u) s += std::norm(z);
  return std::sqrt(s * g.dx());
}

ResidualTable dyson_residual(const BandFunction& u0, const BandFunction& V, const SpectralGrid& g, double t,
                             const std::vector<double>& epsilons, double tol) {
  check_grid(g, u0, V, t);
  const int n = g.n_points;
  std::vector<cd> u_grid = sample(u0, g), v_grid = sample(V, g);
  std::vector<cd> s1(n), s2(n);
  parallel_for(n, [&](std::size_t j) { s1[j] = s1_eval(u0, t, g.x(static_cast<int>(j)), tol); });
  if (!V.is_zero()) {
    WProfile w(AmplitudeW{V, u0, 0.1 * tol}, t, 0.1 * tol);
    parallel_for(n, [&](std::size_t j) { s2[j] = s2_eval(w, g.x(static_cast<int>(j)), tol); });
  }
  ResidualTable table;
  for (cd z : s1) table.s1_peak = std::max(table.s1_peak, std::abs(z));
  table.rows.resize(epsilons.size());
  parallel_for(epsilons.size(), [&](std::size_t k) {
    double e = epsilons[k];
    std::vector<cd> ve(n);
    for (int j = 0; j < n; ++j) ve[j] = e * v_grid[j];
    std::vector<cd> u = evolve(u_grid, ve, g, t);
    double r = 0;
    for (int j = 0; j < n; ++j) r = std::max(r, std::abs(u[j] - s1[j] - e * kDysonNorm * s2[j]));
    table.rows[k] = {e, r};
  });
  std::vector<double> lx, ly;
  for (const auto& row : table.rows)
    if (row.epsilon > 0 && row.residual > 0) {
      lx.push_back(std::log(row.epsilon));
      ly.push_back(std::log(row.residual));
    }
  if (lx.size() >= 2) std::tie(table.slope, table.r2) = least_squares(lx, ly);
  return table;
}

}  // namespace oscillax
