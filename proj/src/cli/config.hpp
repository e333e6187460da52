// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tcw/cascade.hpp"
#include "tcw/csv_io.hpp"
#include "tcw/scalogram.hpp"
#include "tcw/signals.hpp"

namespace tcw::cli {

struct RunConfig {
  std::string c = "sqrt2";
  std::optional<double> tau0;
  std::optional<int> levels;
  std::optional<double> sigma_max;
  std::optional<double> sigma_min;
  std::optional<double> gamma;
  std::optional<int> order;
  double quad_C = 0.70710678118654752440;
  std::optional<double> dt;
  std::string cascade = "discrete";
  std::string input;
  std::optional<std::size_t> length;
  std::string out;
  std::string normalization = "gamma";
  std::string emit = "derivative";
  std::string state_file;
  bool dump_kernels = false;
  bool demean = false;
  bool no_demean = false;
  bool prime = false;
  std::string model = "blob";
  std::vector<double> sigma_refs{4.0, 8.0, 16.0, 32.0};
  std::vector<double> p_values{1.0, 2.0};
};

/// "sqrt2" or a number.
double parse_c(const std::string& text);

/// Cascade from --c, --tau0, --levels / --sigma-max, --sigma-min, --cascade.
CascadeSpec make_cascade(const RunConfig& cfg, double dt);

/// Which normalization mode and parameter the --normalization flag selects.
struct NormalizationChoice {
  Normalization kind = Normalization::gamma_power;
  double p = 0.0;  // only for lp_discrete
};
NormalizationChoice parse_normalization(const std::string& text);

struct Prepared {
  CascadeSpec spec;
  SignalBuffer signal;
};

/// Reads or synthesizes the --input signal and builds the matching cascade.
/// dt is --dt, else the WAV sample spacing, else 1. Mean removal defaults
/// to on for files and off for generators. Signal warnings go to `err`.
Prepared prepare(const RunConfig& cfg, std::ostream& err);

/// Common metadata lines for every CSV the tool writes.
CsvMeta run_meta(const CascadeSpec& spec, const std::string& input);

}  // namespace tcw::cli
