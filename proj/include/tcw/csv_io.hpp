// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcw/scalogram.hpp"
#include "tcw/scale_selection.hpp"

namespace tcw {

/// 17 significant digits, enough to round-trip any double. NaN prints "nan".
std::string format_double(double v);

/// Writes "a,b,c\n" with format_double.
void write_csv_row(std::ostream& os, std::span<const double> values);

using CsvMeta = std::vector<std::pair<std::string, std::string>>;

/// Metadata comment lines ("# key=value"), then the header
/// t,scale_1..scale_K and one row per frame.
void write_scalogram_csv(std::ostream& os, const Scalogram& s, const CsvMeta& extra = {});

/// Header t,n,scale_1..scale_K; one block of rows per derivative order.
/// kernels[i] holds the per-layer impulse responses for orders[i].
void write_kernels_csv(std::ostream& os, const std::vector<Scalogram>& kernels,
                       std::span<const int> orders, const CsvMeta& meta = {});

/// Header sigma_ref,sigma_hat,value,c,gamma,n.
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

struct NormRow {
  double sigma = 0.0;
  int order = 0;
  double gamma = 1.0;
  double p = 1.0;
  double continuous = 0.0;
  double discrete = 0.0;
};

/// Header sigma,n,gamma,p,continuous,discrete.
void write_norms_csv(std::ostream& os, std::span<const NormRow> rows, const CsvMeta& meta = {});

}  // namespace tcw
