// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/scale_selection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcw/engine.hpp"
#include "tcw/error.hpp"
#include "tcw/signals.hpp"
#include "tcw/wavelets.hpp"

namespace tcw {
namespace {

double mag(const Scalogram& s, std::size_t t, std::size_t k) { return std::abs(s(t, k)); }

std::vector<double> column_maxima(const Scalogram& s, std::size_t skip) {
  std::vector<double> out(s.cols(), 0.0);
  for (std::size_t t = skip; t < s.rows(); ++t) {
    for (std::size_t k = 0; k < s.cols(); ++k) {
      const double v = mag(s, t, k);
      if (v > out[k]) out[k] = v;
    }
  }
  return out;
}

ScaleEstimate refine(const Scalogram& s, std::size_t t, std::size_t k, const DetectOptions& opts,
                     const std::vector<double>& col_max) {
  ScaleEstimate e;
  e.row = t;
  e.col = k;
  e.order = s.meta.order;
  e.gamma = s.meta.gamma;
  e.value = mag(s, t, k);
  e.t_hat = s.time(t);
  const double sigma = std::sqrt(s.scales[k]);
  e.sigma_hat = sigma;

  const std::size_t K = s.cols();
  e.boundary = k == 0 || k + 1 == K;
  if (!e.boundary) {
    double l, m, r;
    if (opts.refinement == ScaleRefinement::per_scale_maximum) {
      l = col_max[k - 1];
      m = col_max[k];
      r = col_max[k + 1];
    } else {
      l = mag(s, t, k - 1);
      m = mag(s, t, k);
      r = mag(s, t, k + 1);
    }
    if (std::isfinite(l) && std::isfinite(r)) {
      const double d = parabolic_offset(l, m, r);
      // Levels are equally spaced in log sigma with step log c.
      const double c = std::sqrt(s.scales[k + 1] / s.scales[k]);
      e.sigma_hat = sigma * std::pow(c, d);
      e.value = std::max(e.value, m - 0.25 * (l - r) * d);
    }
  }
  if (t > opts.skip_rows && t + 1 < s.rows()) {
    const double l = mag(s, t - 1, k);
    const double r = mag(s, t + 1, k);
    if (std::isfinite(l) && std::isfinite(r)) {
      e.t_hat += s.meta.dt * parabolic_offset(l, mag(s, t, k), r);
    }
  }
  return e;
}

}  // namespace

ScaleEstimate detect_global_extremum(const Scalogram& s, const DetectOptions& opts) {
  double best = 0.0;
  std::size_t bt = 0;
  std::size_t bk = 0;
  for (std::size_t t = opts.skip_rows; t < s.rows(); ++t) {
    for (std::size_t k = 0; k < s.cols(); ++k) {
      const double v = mag(s, t, k);
      if (v > best) {  // NaN never compares greater
        best = v;
        bt = t;
        bk = k;
      }
    }
  }
  if (!(best > 0.0)) throw NumericError("scalogram has no nonzero response to select from");
  std::vector<double> col_max;
  if (opts.refinement == ScaleRefinement::per_scale_maximum) col_max = column_maxima(s, opts.skip_rows);
  return refine(s, bt, bk, opts, col_max);
}

std::vector<ScaleEstimate> detect_local_extrema(const Scalogram& s, double threshold,
                                                const DetectOptions& opts) {
  if (!(threshold >= 0.0)) throw ConfigError("threshold must be >= 0");
  std::vector<double> col_max;
  if (opts.refinement == ScaleRefinement::per_scale_maximum) col_max = column_maxima(s, opts.skip_rows);
  std::vector<ScaleEstimate> out;
  const auto T = static_cast<std::ptrdiff_t>(s.rows());
  const auto K = static_cast<std::ptrdiff_t>(s.cols());
  const auto skip = static_cast<std::ptrdiff_t>(opts.skip_rows);
  for (std::ptrdiff_t t = skip; t < T; ++t) {
    for (std::ptrdiff_t k = 0; k < K; ++k) {
      const double v = mag(s, t, k);
      if (!(v > threshold)) continue;
      bool strict = true;
      for (std::ptrdiff_t dt = -1; dt <= 1 && strict; ++dt) {
        for (std::ptrdiff_t dk = -1; dk <= 1; ++dk) {
          if (dt == 0 && dk == 0) continue;
          const auto tt = t + dt;
          const auto kk = k + dk;
          if (tt < skip || tt >= T || kk < 0 || kk >= K) continue;
          if (!(v > mag(s, tt, kk)) && !std::isnan(mag(s, tt, kk))) {
            strict = false;
            break;
          }
        }
      }
      if (strict) out.push_back(refine(s, t, k, opts, col_max));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ScaleEstimate& a, const ScaleEstimate& b) { return a.value > b.value; });
  return out;
}

double blob_scale_formula(double gamma, double tau0) {
  if (!(gamma > 0.0 && gamma < 1.5)) throw ConfigError("blob scale formula needs 0 < gamma < 3/2");
  if (!(tau0 > 0.0)) throw ConfigError("tau0 must be > 0");
  return 2.0 * gamma / (3.0 - 2.0 * gamma) * tau0;
}

double edge_scale_formula(double gamma, double tau0) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("edge scale formula needs 0 < gamma < 1");
  if (!(tau0 > 0.0)) throw ConfigError("tau0 must be > 0");
  return gamma / (1.0 - gamma) * tau0;
}

std::size_t warmup_rows(const CascadeSpec& spec) {
  const double d = mean_delay_continuous(spec.c, spec.tau_levels.back());
  return static_cast<std::size_t>(std::ceil(2.0 * d / spec.dt));
}

SweepConfig default_sweep(SignalModel model, double c, std::vector<double> sigma_refs) {
  SweepConfig cfg;
  cfg.model = model;
  cfg.c = c;
  cfg.sigma_refs = std::move(sigma_refs);
  cfg.order = model == SignalModel::blob ? 2 : 1;
  cfg.gamma = model == SignalModel::blob ? 0.75 : 0.5;
  return cfg;
}

CascadeSpec sweep_cascade(double c, double sigma_min, double sigma_max) {
  if (!(sigma_min > 0.0) || !(sigma_max >= sigma_min)) {
    throw ConfigError("sweep needs 0 < sigma_min <= sigma_max");
  }
  const double tau0 = sigma_min * sigma_min / (c * c);
  return build_cascade(c, tau0, levels_for_sigma_max(c, tau0, sigma_max));
}

std::vector<SweepRow> scale_selection_sweep(const SweepConfig& cfg) {
  if (cfg.sigma_refs.empty()) throw ConfigError("sweep needs at least one sigma_ref");
  const CascadeSpec spec = sweep_cascade(cfg.c, cfg.sigma_min, cfg.sigma_max);
  const std::size_t skip = warmup_rows(spec);
  const double delay = mean_delay_continuous(spec.c, spec.tau_levels.back());

  std::vector<SweepRow> rows;
  for (double sigma_ref : cfg.sigma_refs) {
    if (!(sigma_ref > 0.0)) throw ConfigError("sigma_ref must be > 0");
    const auto reach = static_cast<std::size_t>(std::ceil(8.0 * sigma_ref));
    const std::size_t center = skip + reach + 1;
    const std::size_t length = center + reach + static_cast<std::size_t>(std::ceil(4.0 * delay)) + 1;
    const SignalBuffer f = cfg.model == SignalModel::blob ? gen_blob(sigma_ref, length, center)
                                                          : gen_edge(sigma_ref, length, center);

    ChannelBank bank(spec);
    const Scalogram smooth = bank.run(f.samples);
    Scalogram d = temporal_derivative(smooth, cfg.order);
    d = scale_normalize(d, cfg.gamma);
    const ScaleEstimate e = detect_global_extremum(d, {skip, cfg.refinement});
    rows.push_back({sigma_ref, e.sigma_hat, e.value, cfg.c, cfg.gamma, cfg.order, e.boundary});
  }
  return rows;
}

}  // namespace tcw
