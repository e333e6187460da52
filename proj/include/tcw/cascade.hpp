// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <cstddef>
#include <vector>

namespace tcw {

struct KernelSamples;

/// Which set of time constants the recursive filters consume.
enum class CascadeMode {
  /// mu_disc, derived from the scale increments with the mu^2 + mu variance law.
  discrete,
  /// mu_cont / dt, the truncated continuous cascade sampled naively.
  continuous_truncated,
};

/// Parameterization of one cascade of first-order integrators over the
/// logarithmically spaced scale levels tau_k = tau0 * c^(2k), k = 1..K.
///
/// Time constants are stored in two unit systems: mu_cont in user time units
/// (the continuous truncated cascade at tau_K) and mu_disc in samples.
struct CascadeSpec {
  double c = 0.0;
  double tau0 = 0.0;
  int K = 0;
  double dt = 1.0;
  CascadeMode mode = CascadeMode::discrete;
  std::vector<double> mu_cont;
  std::vector<double> mu_disc;
  std::vector<double> tau_levels;

  std::size_t layers() const { return static_cast<std::size_t>(K); }
  /// Time constants, in samples, that drive the recursive filters.
  std::vector<double> filter_mu() const;
  /// sqrt(tau_k) for a 0-based layer index.
  double sigma(std::size_t layer) const;
};

enum class DelayKind { continuous_closed_form, discrete_empirical };

struct DelayMeasure {
  double mean_delay = 0.0;
  double tmax_delay = 0.0;
  DelayKind kind = DelayKind::discrete_empirical;
};

/// [tau0 c^2, tau0 c^4, ..., tau0 c^(2K)].
std::vector<double> scale_levels(double c, double tau0, int K);

/// k-th time constant of the infinite cascade: c^-k sqrt(c^2 - 1) sqrt(tau).
double mu_limit(double c, double tau, int k);

/// The first K time constants of the infinite cascade, without compensation
/// for the truncated tail. All values are distinct.
std::vector<double> mu_limit_series(double c, double tau, int K);

/// K time constants of the truncated cascade. The first one carries the
/// variance of every discarded layer so that the sum of squares is tau.
std::vector<double> mu_truncated(double c, double tau, int K);

/// Nonnegative root of mu^2 + mu = delta_tau (delta_tau in squared samples).
double mu_discrete(double delta_tau);

CascadeSpec build_cascade(double c, double tau0, int K, double dt = 1.0,
                          CascadeMode mode = CascadeMode::discrete);

/// Cascade with eight layers at or below sigma_min and levels reaching at
/// least sigma_max: tau0 = sigma_min^2 c^-16.
CascadeSpec default_cascade(double c, double sigma_min, double sigma_max,
                            double dt = 1.0,
                            CascadeMode mode = CascadeMode::discrete);

/// Number of levels needed so that sqrt(tau_K) >= sigma_max.
int levels_for_sigma_max(double c, double tau0, double sigma_max);

/// Temporal mean of the limit kernel: sqrt((c+1)/(c-1)) sqrt(tau).
double mean_delay_continuous(double c, double tau);

/// Position of the limit-kernel maximum from the scale-time approximation.
double tmax_delay_approx(double c, double tau);

/// Mean and parabolically refined argmax of a nonnegative sampled kernel.
DelayMeasure delay_measures_discrete(const KernelSamples& kernel);

/// Three-point parabolic vertex offset in [-1, 1] for samples (left, mid,
/// right). Returns 0 for a flat or degenerate triple.
double parabolic_offset(double left, double mid, double right);

}  // namespace tcw
