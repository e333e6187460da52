// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <cstddef>
#include <vector>

#include "tcw/cascade.hpp"
#include "tcw/scalogram.hpp"

namespace tcw {

/// An interpolated extremum of |response| over time and scale.
struct ScaleEstimate {
  double t_hat = 0.0;
  double sigma_hat = 0.0;
  double value = 0.0;
  int order = 0;
  double gamma = 1.0;
  std::size_t row = 0;
  std::size_t col = 0;
  /// True when the discrete maximum sits on the finest or coarsest level, in
  /// which case sigma_hat is the raw level.
  bool boundary = false;
};

enum class ScaleRefinement {
  /// Parabola through the three levels around the peak cell, all taken at the
  /// peak row.
  at_peak_time,
  /// Parabola through the per-level maxima over time of the three levels.
  per_scale_maximum,
};

struct DetectOptions {
  /// Leading rows excluded from the search (onset transient).
  std::size_t skip_rows = 0;
  ScaleRefinement refinement = ScaleRefinement::at_peak_time;
};

/// Global maximum of |data| with parabolic refinement in (log sigma, value)
/// and in (t, value). NaN cells are ignored. Ties go to the earliest row,
/// then the finest level. Throws NumericError if no cell is nonzero.
ScaleEstimate detect_global_extremum(const Scalogram& s, const DetectOptions& opts = {});

/// Every strict 3x3 maximum of |data| above `threshold`, refined like the
/// global detector and sorted by value, largest first.
std::vector<ScaleEstimate> detect_local_extrema(const Scalogram& s, double threshold,
                                                const DetectOptions& opts = {});

/// Selected scale for a Gaussian blob of variance tau0 under gamma-normalized
/// second derivatives: 2 gamma / (3 - 2 gamma) tau0, 0 < gamma < 3/2.
double blob_scale_formula(double gamma, double tau0);

/// Selected scale for a Gaussian edge of variance tau0 under gamma-normalized
/// first derivatives: gamma / (1 - gamma) tau0, 0 < gamma < 1.
double edge_scale_formula(double gamma, double tau0);

/// ceil(2 * mean delay at the coarsest level / dt).
std::size_t warmup_rows(const CascadeSpec& spec);

enum class SignalModel { blob, edge };

struct SweepConfig {
  SignalModel model = SignalModel::blob;
  std::vector<double> sigma_refs;
  double c = 1.4142135623730951;
  double gamma = 0.75;
  int order = 2;
  double sigma_min = 0.125;
  double sigma_max = 64.0;
  ScaleRefinement refinement = ScaleRefinement::at_peak_time;
};

/// Config for the usual model: n = 2, gamma = 3/4 for blobs and n = 1,
/// gamma = 1/2 for edges.
SweepConfig default_sweep(SignalModel model, double c, std::vector<double> sigma_refs);

struct SweepRow {
  double sigma_ref = 0.0;
  double sigma_hat = 0.0;
  double value = 0.0;
  double c = 0.0;
  double gamma = 0.0;
  int order = 0;
  bool boundary = false;
};

/// Levels sigma_min .. >= sigma_max in steps of c, as used by the sweep.
CascadeSpec sweep_cascade(double c, double sigma_min, double sigma_max);

/// For each sigma_ref: synthesize the model signal after the warm-up region,
/// run the discrete pipeline, detect the global extremum.
std::vector<SweepRow> scale_selection_sweep(const SweepConfig& cfg);

}  // namespace tcw
