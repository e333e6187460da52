// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "tcw/cascade.hpp"

namespace tcw {

/// Partial-fraction form of a cascade of K truncated exponentials:
///   d^n/dt^n Psi(t) = sum_k (-1/mu_k)^n (A_k / mu_k) exp(-t / mu_k),  t >= 0.
struct SeriesKernel {
  std::vector<double> mus;
  std::vector<double> A;
  int order = 0;

  /// Variance of the smoothing kernel, sum mu_k^2.
  double tau() const;
};

/// A_k = prod_{i != k} 1 / (1 - mu_i / mu_k). Throws ConfigError when two time
/// constants are closer than 1e-9 relative.
std::vector<double> series_coefficients(std::span<const double> mus);

SeriesKernel make_series_kernel(std::vector<double> mus, int order);

/// Kernel (or derivative) value; zero for t < 0.
double eval_series(const SeriesKernel& kernel, double t);

/// Impulse response of the same cascade written as a linear system
/// x' = M x, evaluated with a matrix exponential. Works for repeated time
/// constants, where the partial-fraction form does not exist.
class CascadeKernel {
 public:
  explicit CascadeKernel(std::vector<double> mus);

  /// Order-n time derivative of the cascade kernel at t (0 for t < 0).
  double eval(int order, double t) const;
  double tau() const;
  const std::vector<double>& mus() const { return mus_; }

 private:
  std::vector<double> mus_;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Integral of |f|^p over [0, t_end]. The interval is cut at the sign changes
/// of f found on `grid` and each piece is integrated with adaptive
/// Gauss-Kronrod. Throws NumericError when the error estimate exceeds `tol`
/// relative to the result.
QuadratureResult integrate_abs_pow(const std::function<double(double)>& f, double p,
                                   std::span<const double> grid, double tol = 1e-8);

/// Lp norm of tau^(n gamma / 2) d^n Psi over t >= 0 from the series form.
double continuous_lp_norm(const SeriesKernel& kernel, double p, double gamma);

/// Same norm from the state-space form.
double continuous_lp_norm(const CascadeKernel& kernel, int order, double p, double gamma);

/// Lp norm of the order-n derivative of the limit kernel truncated to K
/// layers (first layer compensating for the discarded variance) at scale
/// tau. Uses the series form when the time constants are distinct and the
/// state-space form otherwise.
double limit_kernel_norm(double c, double tau, int order, double p, double gamma = 1.0,
                         int K = 8);

/// Integral of t^power Psi(t) dt for the smoothing kernel of the series form.
double series_moment(const SeriesKernel& kernel, int power);

/// Non-causal Gaussian g(t; tau) and its first two derivatives.
double gaussian_kernel(double t, double tau, int order);

/// Closed-form L1 / L2 norms of g_t and g_tt.
double gaussian_derivative_norms(double tau, int order, double p);

/// T(m; tau) = exp(-tau) I_m(tau), the discrete analogue of the Gaussian.
double discrete_gaussian(long m, double tau);

/// T(m; tau) for m = -radius..radius, index m + radius.
std::vector<double> discrete_gaussian_kernel(double tau, long radius);

/// max |DoG(t; tau, dtau) - (dtau/2) g_tt(t; tau)| / max |(dtau/2) g_tt|.
double dog_vs_gtt_residual(double tau, double dtau);

/// |prod_k 1 / (1 + i mu_k omega)|.
double continuous_magnitude(std::span<const double> mus, double omega);

/// |prod_k 1 / (1 + mu_k (1 - exp(-i omega_d)))| for time constants in samples
/// and omega_d in radians per sample.
double discrete_magnitude(std::span<const double> mus_samples, double omega_per_sample);

/// Angular frequency where the continuous magnitude drops to 1/sqrt(2).
double half_power_frequency(std::span<const double> mus);

struct FourierCheck {
  std::vector<double> omega;
  std::vector<double> continuous;
  std::vector<double> discrete;
  double max_deviation = 0.0;
};

/// Continuous truncated-cascade magnitude versus the recursive filter
/// response at omega * dt, over omega in user units.
FourierCheck fourier_magnitude_check(const CascadeSpec& spec, std::span<const double> omega_grid);

}  // namespace tcw
