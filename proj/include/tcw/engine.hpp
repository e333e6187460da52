// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tcw/cascade.hpp"
#include "tcw/scalogram.hpp"

namespace tcw {

struct KernelMeta {
  double c = 0.0;
  double tau0 = 0.0;
  double tau = 0.0;
  std::size_t layers = 0;
  int order = 0;
  double gamma = 1.0;
};

/// A sampled convolution kernel: values[i] sits at time t0 + i * dt.
struct KernelSamples {
  std::vector<double> values;
  double t0 = 0.0;
  double dt = 1.0;
  KernelMeta meta;
  /// 1 - sum(values) for smoothing kernels; 0 when not applicable.
  double tail_mass = 0.0;
};

/// Time-recursive state of a cascade of first-order recursive filters.
///
/// Each frame, layer 1 is driven by the input sample and layer k > 1 by the
/// value layer k-1 produced in the same frame. The bank keeps the current
/// frame plus the two preceding ones, which is all that backward first and
/// second differences need.
///
/// A bank is single-writer; distinct banks are independent.
class ChannelBank {
 public:
  explicit ChannelBank(CascadeSpec spec, double initial_value = 0.0);

  /// Advances one frame and returns the K channel values.
  /// Throws NumericError on a non-finite sample, leaving the state untouched.
  std::span<const double> step(double sample);

  /// Processes a block. Row t of the result equals the t-th call to step();
  /// the two frames before the block are stored as the scalogram history.
  Scalogram run(std::span<const double> samples);

  /// Sets every channel (and both history frames) to initial_value and
  /// rewinds the frame counter. initial_value = first sample primes the bank
  /// against onset transients.
  void reset(double initial_value = 0.0);

  /// Restores a previously saved state. Sizes must equal the layer count.
  void restore(std::vector<double> level, std::vector<double> level_prev,
               std::vector<double> prev2, std::uint64_t frame_index);

  const CascadeSpec& spec() const { return spec_; }
  std::size_t layers() const { return level_.size(); }
  std::span<const double> level() const { return level_; }
  std::span<const double> level_prev() const { return prev_; }
  std::span<const double> prev2() const { return prev2_; }
  std::uint64_t frame_index() const { return frame_; }

  /// Backward difference of order 1 or 2 for the current frame.
  void difference(int order, std::span<double> out) const;

 private:
  CascadeSpec spec_;
  std::vector<double> gain_;
  std::vector<double> level_;
  std::vector<double> prev_;
  std::vector<double> prev2_;
  std::uint64_t frame_ = 0;
};

/// Impulse responses of the cumulative cascades, one column per layer, over
/// N samples. Row i is time i * dt.
Scalogram impulse_responses(const CascadeSpec& spec, std::size_t N);

/// Smallest length whose truncated tail mass is at most tail_tol for every
/// layer up to and including `layer` (0-based).
std::size_t required_kernel_length(const CascadeSpec& spec, std::size_t layer,
                                   double tail_tol = 1e-8);

/// Equivalent smoothing kernel of layers 1..layer+1. Throws ConfigError naming
/// the required length when N leaves more than tail_tol mass in the tail.
KernelSamples equivalent_kernel(const CascadeSpec& spec, std::size_t layer, std::size_t N,
                                double tail_tol = 1e-8);

}  // namespace tcw
