// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tcw {

/// Uniformly sampled signal: samples[i] sits at origin_time + i * dt.
struct SignalBuffer {
  std::vector<double> samples;
  double dt = 1.0;
  double origin_time = 0.0;
  std::string label;
  std::vector<std::string> warnings;
};

/// Discrete Gaussian T(t - center; sigma_ref^2). The buffer must cover
/// center +- 8 sigma_ref.
SignalBuffer gen_blob(double sigma_ref, std::size_t length, std::size_t center);

/// Inclusive running sum of gen_blob: sum_{m <= t} T(m - center; sigma_ref^2).
SignalBuffer gen_edge(double sigma_ref, std::size_t length, std::size_t center);

/// sin(exp((b - t) / a)) at t = 0..length-1. Exponent arguments above 700 are
/// clamped and reported in `warnings`.
SignalBuffer gen_chirp(double a, double b, std::size_t length);

SignalBuffer gen_impulse(std::size_t length, std::size_t position, double amplitude = 1.0);

/// 0 before `position`, 1 from `position` on.
SignalBuffer gen_step(std::size_t length, std::size_t position);

/// One numeric column of a comma-separated file. `column` is a 0-based index
/// or a header name; an empty string selects column 0. A first line whose
/// selected field is not numeric is taken as the header. Blank lines and
/// lines starting with '#' are skipped.
SignalBuffer read_csv(const std::string& path, const std::string& column = "", double dt = 1.0);

/// 16-bit PCM WAV. Channels are averaged; samples are scaled by 1/32768.
SignalBuffer read_wav(const std::string& path);

/// Writes a mono 16-bit PCM WAV, clamping to [-1, 32767/32768].
void write_wav(const std::string& path, const SignalBuffer& signal, unsigned sample_rate);

/// Subtracts the sample mean in place.
void demean(SignalBuffer& signal);

}  // namespace tcw
