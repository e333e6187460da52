// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/scalogram.hpp"

#include <string>
#include <utility>

#include "tcw/error.hpp"

namespace tcw {

const char* to_string(Normalization n) {
  switch (n) {
    case Normalization::none: return "none";
    case Normalization::gamma_power: return "gamma";
    case Normalization::lp_discrete: return "lp";
    case Normalization::lp_continuous: return "mother";
  }
  return "?";
}

const char* to_string(ScalogramKind k) {
  switch (k) {
    case ScalogramKind::smoothed: return "smoothed";
    case ScalogramKind::derivative: return "derivative";
    case ScalogramKind::quasi_quadrature: return "quasi_quadrature";
    case ScalogramKind::bandpass: return "bandpass";
  }
  return "?";
}

Scalogram::Scalogram(std::size_t rows, std::vector<double> scale_levels, ScalogramMeta m)
    : data(rows * scale_levels.size(), 0.0), scales(std::move(scale_levels)), meta(m) {
  for (std::size_t k = 1; k < scales.size(); ++k) {
    if (!(scales[k] > scales[k - 1])) {
      throw ConfigError("scalogram scales must be strictly increasing");
    }
  }
}

std::vector<double> Scalogram::column(std::size_t k) const {
  std::vector<double> out(rows());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = (*this)(t, k);
  return out;
}

void require_same_shape(const Scalogram& a, const Scalogram& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.scales != b.scales) {
    throw ConfigError(std::string(what) + ": scalogram shapes or scales differ");
  }
}

}  // namespace tcw
