// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <iosfwd>

#include "config.hpp"

namespace tcw::cli {

void cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_norms(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_scalesel(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_stream(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

/// Per-layer factors of a normalization mode: values multiply the columns,
/// or divide them when `divide` is set.
struct ColumnScaling {
  std::vector<double> values;
  bool divide = false;
};
ColumnScaling column_scaling(const CascadeSpec& spec, int order, double gamma,
                             const NormalizationChoice& choice);

/// Normalizes an order-n difference scalogram according to the chosen mode.
Scalogram normalize(const Scalogram& d, const NormalizationChoice& choice, double gamma,
                    const CascadeSpec& spec);

}  // namespace tcw::cli
