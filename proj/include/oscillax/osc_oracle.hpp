#pragma once

#include <complex>
#include <functional>

namespace oscillax {

using Amplitude = std::function<std::complex<double>(double)>;

// int_{lo}^{hi} U(p) e^{-i w (p - p0)^2} dp
struct OscillatoryIntegral {
  Amplitude amplitude;
  double support_lo = 0;
  double support_hi = 0;
  double omega = 0;
  double p0 = 0;
};

struct PhaseIntegralResult {
  std::complex<double> value = 0;
  double abs_error_estimate = 0;
  long panels_used = 0;
  bool ok = true;
};

constexpr double kMaxOmega = 1e6;
constexpr long kMaxPanels = 1L << 20;

// Adaptive Gauss-Legendre 32/16 panels with at least 10 nodes per local wavelength.
PhaseIntegralResult integrate(const OscillatoryIntegral& oi, double tol);

// Same panel and error contract for a general complex integrand. max_freq is an
// upper bound on the angular frequency of f, used for the initial node density.
PhaseIntegralResult integrate_time_kernel(const Amplitude& f, double t_lo, double t_hi, double tol,
                                          double max_freq = 0);

// Value of an integral, throwing QuadratureError on budget exhaustion.
std::complex<double> integrate_value(const OscillatoryIntegral& oi, double tol);
std::complex<double> integrate_kernel_value(const Amplitude& f, double lo, double hi, double tol,
                                            double max_freq = 0);

}  // namespace oscillax
