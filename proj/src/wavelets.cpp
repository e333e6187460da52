// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tcw/error.hpp"

namespace tcw {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_order(int order) {
  if (order != 1 && order != 2) {
    throw ConfigError("derivative order must be 1 or 2, got " + std::to_string(order));
  }
}

}  // namespace

Scalogram temporal_derivative(const Scalogram& channels, int order) {
  check_order(order);
  if (channels.meta.kind != ScalogramKind::smoothed || channels.meta.order != 0) {
    throw ConfigError("temporal_derivative expects raw smoothed channels");
  }
  Scalogram out = channels;
  out.meta.kind = ScalogramKind::derivative;
  out.meta.order = order;
  out.history.clear();
  const std::size_t T = channels.rows();
  const std::size_t K = channels.cols();
  const bool hist = channels.has_history() && channels.history[0].size() == K &&
                    channels.history[1].size() == K;

  // Value at row t - back, reaching into the history when t < back.
  auto at = [&](std::size_t t, std::size_t back, std::size_t k) -> double {
    if (t >= back) return channels(t - back, k);
    return channels.history[back - t - 1][k];
  };

  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t k = 0; k < K; ++k) {
      if (!hist && t < static_cast<std::size_t>(order)) {
        out(t, k) = kNaN;
        continue;
      }
      out(t, k) = order == 1 ? at(t, 0, k) - at(t, 1, k)
                             : at(t, 0, k) - 2.0 * at(t, 1, k) + at(t, 2, k);
    }
  }
  out.warmup_rows = hist ? 0 : std::min<std::size_t>(T, order);
  return out;
}

Scalogram scale_normalize(const Scalogram& s, double gamma) {
  if (!std::isfinite(gamma) || !(gamma > 0.0)) {
    throw ConfigError("gamma must be > 0, got " + std::to_string(gamma));
  }
  if (s.meta.normalization != Normalization::none) {
    throw ConfigError("scalogram is already normalized");
  }
  Scalogram out = s;
  out.meta.gamma = gamma;
  out.meta.normalization = Normalization::gamma_power;
  const int n = s.meta.order;
  if (n == 0) return out;
  for (std::size_t k = 0; k < s.cols(); ++k) {
    const double factor = std::pow(s.scales[k], n * gamma / 2.0);
    for (std::size_t t = 0; t < s.rows(); ++t) out(t, k) *= factor;
  }
  return out;
}

double gamma_to_p(int order, double gamma) {
  if (order < 1) throw ConfigError("gamma_to_p needs derivative order >= 1");
  const double denom = 1.0 + order * (1.0 - gamma);
  if (!(denom > 0.0)) {
    throw ConfigError("gamma " + std::to_string(gamma) + " gives no valid Lp exponent for order " +
                      std::to_string(order));
  }
  return 1.0 / denom;
}

Scalogram mother_wavelet_normalize(const Scalogram& s, double p, std::span<const double> norms,
                                   Normalization kind) {
  if (norms.size() != s.cols()) throw ConfigError("one norm per scale is required");
  if (!(p > 0.0)) throw ConfigError("Lp exponent must be > 0");
  for (double n : norms) {
    if (!std::isfinite(n) || !(n > 0.0)) throw ConfigError("kernel norms must be finite and > 0");
  }
  if (s.meta.normalization != Normalization::none) {
    throw ConfigError("scalogram is already normalized");
  }
  Scalogram out = s;
  out.meta.normalization = kind;
  out.meta.p = p;
  for (std::size_t t = 0; t < s.rows(); ++t) {
    for (std::size_t k = 0; k < s.cols(); ++k) out(t, k) /= norms[k];
  }
  return out;
}

Scalogram quasi_quadrature(const Scalogram& first, const Scalogram& second, double C) {
  require_same_shape(first, second, "quasi_quadrature");
  if (!(C > 0.0)) throw ConfigError("quasi-quadrature weight C must be > 0");
  Scalogram out = first;
  out.meta.kind = ScalogramKind::quasi_quadrature;
  out.warmup_rows = std::max(first.warmup_rows, second.warmup_rows);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const double a = first.data[i];
    const double b = second.data[i];
    out.data[i] = std::sqrt(a * a + C * b * b);
  }
  return out;
}

Scalogram bandpass(const Scalogram& channels, std::span<const double> input) {
  if (input.size() != channels.rows()) {
    throw ConfigError("bandpass: input length differs from scalogram rows");
  }
  if (channels.meta.kind != ScalogramKind::smoothed) {
    throw ConfigError("bandpass expects raw smoothed channels");
  }
  Scalogram out = channels;
  out.meta.kind = ScalogramKind::bandpass;
  out.history.clear();
  for (std::size_t t = 0; t < channels.rows(); ++t) {
    out(t, 0) = channels(t, 0) - input[t];
    for (std::size_t k = 1; k < channels.cols(); ++k) {
      out(t, k) = channels(t, k) - channels(t, k - 1);
    }
  }
  return out;
}

std::vector<double> reconstruct(const Scalogram& bands, std::span<const double> coarsest,
                                std::size_t j) {
  const std::size_t K = bands.cols();
  if (j > K) throw ConfigError("reconstruction level out of range");
  if (coarsest.size() != bands.rows()) {
    throw ConfigError("reconstruct: coarsest channel length differs from bandpass rows");
  }
  std::vector<double> out(coarsest.begin(), coarsest.end());
  // L(tau_{k-1}) = L(tau_k) - dL(tau_k), walking down from the coarsest level.
  for (std::size_t t = 0; t < out.size(); ++t) {
    for (std::size_t k = K; k > j; --k) out[t] -= bands(t, k - 1);
  }
  return out;
}

ShiftResidual bandpass_shift_residual(const Scalogram& channels, std::span<const double> input,
                                      const CascadeSpec& spec) {
  if (channels.cols() != spec.layers() || channels.scales != spec.tau_levels) {
    throw ConfigError("shift check: scalogram does not belong to this cascade");
  }
  if (input.size() != channels.rows()) {
    throw ConfigError("shift check: input length differs from scalogram rows");
  }
  const auto mu = spec.filter_mu();
  const bool hist = channels.has_history();
  ShiftResidual r;
  for (std::size_t t = hist ? 0 : 1; t < channels.rows(); ++t) {
    for (std::size_t k = 0; k < channels.cols(); ++k) {
      const double prev = t > 0 ? channels(t - 1, k) : channels.history[0][k];
      const double finer = k == 0 ? input[t] : channels(t, k - 1);
      const double lhs = prev - finer;
      const double rhs = -(1.0 + mu[k]) * (channels(t, k) - prev);
      const double err = std::abs(lhs - rhs);
      if (err > r.max_abs) r = {err, t, k};
    }
  }
  return r;
}

KernelSamples derivative_kernel(const KernelSamples& kernel, int order, bool extend) {
  check_order(order);
  const auto& v = kernel.values;
  const std::size_t n = v.size() + (extend ? static_cast<std::size_t>(order) : 0);
  auto at = [&](std::ptrdiff_t i) -> double {
    return i >= 0 && static_cast<std::size_t>(i) < v.size() ? v[i] : 0.0;
  };
  KernelSamples out = kernel;
  out.values.assign(n, 0.0);
  out.meta.order = order;
  out.tail_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = static_cast<std::ptrdiff_t>(i);
    out.values[i] = order == 1 ? at(s) - at(s - 1) : at(s) - 2.0 * at(s - 1) + at(s - 2);
  }
  return out;
}

double lp_norm(std::span<const double> values, double p) {
  if (!(p > 0.0)) throw ConfigError("lp exponent must be > 0");
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc, 1.0 / p);
}

std::vector<double> discrete_lp_norms(const CascadeSpec& spec, int order, double p, double gamma,
                                      double tail_tol) {
  if (order < 0 || order > 2) throw ConfigError("derivative order must be 0, 1 or 2");
  const std::size_t N = required_kernel_length(spec, spec.layers() - 1, tail_tol);
  const Scalogram responses = impulse_responses(spec, N);
  std::vector<double> norms(spec.layers());
  for (std::size_t k = 0; k < spec.layers(); ++k) {
    KernelSamples ks;
    ks.values = responses.column(k);
    if (order > 0) ks = derivative_kernel(ks, order, true);
    const double factor = std::pow(spec.tau_levels[k], order * gamma / 2.0);
    norms[k] = factor * lp_norm(ks.values, p);
  }
  return norms;
}

double norm_at_level(double base_norm, double c, double j, int order, double p) {
  if (!(p > 0.0)) throw ConfigError("Lp exponent must be > 0");
  return std::pow(c, -j * (order + 1) + j / p) * base_norm;
}

}  // namespace tcw
