// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tcw {

enum class Normalization {
  none,
  /// Column k multiplied by tau_k^(n gamma / 2).
  gamma_power,
  /// Column k divided by the discrete lp norm of its equivalent kernel.
  lp_discrete,
  /// Column k divided by the continuous Lp norm of the limit-kernel derivative.
  lp_continuous,
};

enum class ScalogramKind { smoothed, derivative, quasi_quadrature, bandpass };

const char* to_string(Normalization n);
const char* to_string(ScalogramKind k);

struct ScalogramMeta {
  ScalogramKind kind = ScalogramKind::smoothed;
  int order = 0;
  double gamma = 1.0;
  double c = 0.0;
  double tau0 = 0.0;
  double dt = 1.0;
  Normalization normalization = Normalization::none;
  double p = 0.0;
};

/// Time x scale matrix, row-major. Row i is the frame at time t0 + i * dt.
///
/// `history` optionally carries the two frames preceding row 0 (history[0]
/// is row -1, history[1] is row -2) so that backward differences of a
/// streamed block need no warm-up. `warmup_rows` counts leading rows whose
/// values are undefined (stored as NaN).
struct Scalogram {
  std::vector<double> data;
  std::vector<double> scales;
  std::vector<double> delay_note;
  ScalogramMeta meta;
  double t0 = 0.0;
  std::size_t warmup_rows = 0;
  std::vector<std::vector<double>> history;

  Scalogram() = default;
  Scalogram(std::size_t rows, std::vector<double> scale_levels, ScalogramMeta m);

  std::size_t rows() const { return cols() == 0 ? 0 : data.size() / cols(); }
  std::size_t cols() const { return scales.size(); }
  bool empty() const { return data.empty(); }

  double& operator()(std::size_t t, std::size_t k) { return data[t * cols() + k]; }
  double operator()(std::size_t t, std::size_t k) const { return data[t * cols() + k]; }

  std::span<double> row(std::size_t t) { return {data.data() + t * cols(), cols()}; }
  std::span<const double> row(std::size_t t) const {
    return {data.data() + t * cols(), cols()};
  }
  std::vector<double> column(std::size_t k) const;
  double time(std::size_t t) const { return t0 + static_cast<double>(t) * meta.dt; }

  bool has_history() const { return history.size() == 2; }
};

/// Throws ConfigError unless a and b have identical shape and scales.
void require_same_shape(const Scalogram& a, const Scalogram& b, const char* what);

}  // namespace tcw
