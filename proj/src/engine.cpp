// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/engine.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "tcw/error.hpp"

namespace tcw {

ChannelBank::ChannelBank(CascadeSpec spec, double initial_value) : spec_(std::move(spec)) {
  const auto mu = spec_.filter_mu();
  if (mu.empty()) throw ConfigError("cascade has no layers");
  gain_.resize(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (!(mu[k] > 0.0) || !std::isfinite(mu[k])) {
      throw ConfigError("time constants must be finite and > 0");
    }
    gain_[k] = 1.0 / (1.0 + mu[k]);
  }
  level_.resize(mu.size());
  prev_.resize(mu.size());
  prev2_.resize(mu.size());
  reset(initial_value);
}

std::span<const double> ChannelBank::step(double sample) {
  if (!std::isfinite(sample)) throw NumericError("non-finite input sample");
  // Rotate frames without copying: level_ ends up holding the oldest buffer,
  // which is overwritten below.
  std::swap(prev2_, prev_);
  std::swap(prev_, level_);
  const std::size_t K = level_.size();
  level_[0] = prev_[0] + (sample - prev_[0]) * gain_[0];
  for (std::size_t k = 1; k < K; ++k) {
    level_[k] = prev_[k] + (level_[k - 1] - prev_[k]) * gain_[k];
  }
  ++frame_;
  return level_;
}

Scalogram ChannelBank::run(std::span<const double> samples) {
  ScalogramMeta meta;
  meta.kind = ScalogramKind::smoothed;
  meta.c = spec_.c;
  meta.tau0 = spec_.tau0;
  meta.dt = spec_.dt;
  Scalogram out(samples.size(), spec_.tau_levels, meta);
  out.t0 = static_cast<double>(frame_) * spec_.dt;
  out.history = {level_, prev_};
  out.delay_note.resize(layers());
  const auto mu = spec_.filter_mu();
  double acc = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    acc += mu[k];
    out.delay_note[k] = acc * spec_.dt;
  }

  for (std::size_t t = 0; t < samples.size(); ++t) {
    if (!std::isfinite(samples[t])) {
      throw NumericError("non-finite input sample at index " + std::to_string(t));
    }
    const auto row = step(samples[t]);
    std::copy(row.begin(), row.end(), out.row(t).begin());
  }
  return out;
}

void ChannelBank::reset(double initial_value) {
  std::fill(level_.begin(), level_.end(), initial_value);
  std::fill(prev_.begin(), prev_.end(), initial_value);
  std::fill(prev2_.begin(), prev2_.end(), initial_value);
  frame_ = 0;
}

void ChannelBank::restore(std::vector<double> level, std::vector<double> level_prev,
                          std::vector<double> prev2, std::uint64_t frame_index) {
  const std::size_t K = layers();
  if (level.size() != K || level_prev.size() != K || prev2.size() != K) {
    throw ConfigError("restored state does not match the cascade layer count");
  }
  level_ = std::move(level);
  prev_ = std::move(level_prev);
  prev2_ = std::move(prev2);
  frame_ = frame_index;
}

void ChannelBank::difference(int order, std::span<double> out) const {
  if (out.size() != layers()) throw ConfigError("difference output has wrong size");
  switch (order) {
    case 1:
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = level_[k] - prev_[k];
      break;
    case 2:
      for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = level_[k] - 2.0 * prev_[k] + prev2_[k];
      }
      break;
    default:
      throw ConfigError("difference order must be 1 or 2");
  }
}

Scalogram impulse_responses(const CascadeSpec& spec, std::size_t N) {
  ChannelBank bank(spec);
  std::vector<double> impulse(N, 0.0);
  if (N > 0) impulse[0] = 1.0;
  return bank.run(impulse);
}

std::size_t required_kernel_length(const CascadeSpec& spec, std::size_t layer, double tail_tol) {
  if (layer >= spec.layers()) throw ConfigError("layer index out of range");
  if (!(tail_tol > 0.0)) throw ConfigError("tail tolerance must be > 0");
  // Sums of the impulse response of the deepest layer converge slowest, but
  // every shallower layer is checked too.
  ChannelBank bank(spec);
  std::vector<double> mass(layer + 1, 0.0);
  constexpr std::size_t kMaxLength = std::size_t{1} << 28;
  double input = 1.0;
  for (std::size_t n = 1; n <= kMaxLength; ++n) {
    const auto row = bank.step(input);
    input = 0.0;
    bool done = true;
    for (std::size_t k = 0; k <= layer; ++k) {
      mass[k] += row[k];
      if (1.0 - mass[k] > tail_tol) done = false;
    }
    if (done) return n;
  }
  throw NumericError("equivalent kernel does not converge within the length limit");
}

KernelSamples equivalent_kernel(const CascadeSpec& spec, std::size_t layer, std::size_t N,
                                double tail_tol) {
  if (layer >= spec.layers()) throw ConfigError("layer index out of range");
  const Scalogram responses = impulse_responses(spec, N);
  KernelSamples ks;
  ks.values = responses.column(layer);
  ks.dt = spec.dt;
  ks.meta = {spec.c, spec.tau0, spec.tau_levels[layer], layer + 1, 0, 1.0};
  const double mass = std::accumulate(ks.values.begin(), ks.values.end(), 0.0);
  ks.tail_mass = 1.0 - mass;
  if (ks.tail_mass > tail_tol) {
    throw ConfigError("kernel length " + std::to_string(N) + " leaves tail mass " +
                      std::to_string(ks.tail_mass) + "; need N >= " +
                      std::to_string(required_kernel_length(spec, layer, tail_tol)));
  }
  return ks;
}

}  // namespace tcw
