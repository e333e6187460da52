// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tcw/cascade.hpp"
#include "tcw/engine.hpp"
#include "tcw/scalogram.hpp"

namespace tcw {

/// Backward differences of order 1 or 2 along time, per column.
///
/// Uses the scalogram history when present; otherwise the first `order` rows
/// are warm-up rows and hold NaN.
Scalogram temporal_derivative(const Scalogram& channels, int order);

/// Multiplies column k by tau_k^(n gamma / 2). Identity for n = 0.
Scalogram scale_normalize(const Scalogram& s, double gamma);

/// Exponent p for which Lp-normalization of order-n derivatives matches
/// gamma-normalization: p = 1 / (1 + n (1 - gamma)).
double gamma_to_p(int order, double gamma);

/// Divides column k by norms[k].
Scalogram mother_wavelet_normalize(const Scalogram& s, double p, std::span<const double> norms,
                                   Normalization kind = Normalization::lp_discrete);

/// Elementwise sqrt(a^2 + C b^2) of first- and second-order responses.
Scalogram quasi_quadrature(const Scalogram& first, const Scalogram& second, double C);

/// Default quasi-quadrature weight.
inline constexpr double kQuasiQuadratureC = 0.70710678118654752440;

/// Differences between adjacent smoothed channels; column 0 is L(tau_1) - f.
Scalogram bandpass(const Scalogram& channels, std::span<const double> input);

/// L(tau_j) rebuilt from the coarsest channel and the bandpass columns above
/// level j. j = 0 rebuilds the input, j = K returns the coarsest channel.
std::vector<double> reconstruct(const Scalogram& bands, std::span<const double> coarsest,
                                std::size_t j);

struct ShiftResidual {
  double max_abs = 0.0;
  std::size_t row = 0;
  std::size_t layer = 0;
};

/// Max |L(t-1; tau_k) - L(t; tau_k-1) + (1 + mu_k) (L(t; tau_k) - L(t-1; tau_k))|
/// over rows t >= 1 (and row 0 when history is present), all layers.
ShiftResidual bandpass_shift_residual(const Scalogram& channels, std::span<const double> input,
                                      const CascadeSpec& spec);

/// Backward difference of a kernel with zero samples before t0. With
/// `extend`, the support grows by `order` samples so the result telescopes
/// to an exact zero sum.
KernelSamples derivative_kernel(const KernelSamples& kernel, int order, bool extend = true);

/// (sum |v|^p)^(1/p) of a sampled kernel (p > 0).
double lp_norm(std::span<const double> values, double p);

/// Discrete lp norms of tau_k^(n gamma/2) delta^n Psi_disc(.; tau_k) for every
/// layer, from the equivalent kernels truncated at tail_tol.
std::vector<double> discrete_lp_norms(const CascadeSpec& spec, int order, double p, double gamma,
                                      double tail_tol = 1e-8);

/// Norm at tau = c^(2j) tau_base from the norm at tau_base:
/// c^(-j(n+1) + j/p) * base_norm.
double norm_at_level(double base_norm, double c, double j, int order, double p);

}  // namespace tcw
