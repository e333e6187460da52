// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tcw/engine.hpp"
#include "tcw/error.hpp"

namespace tcw {
namespace {

void check_c(double c) {
  if (!std::isfinite(c) || !(c > 1.0)) {
    throw ConfigError("distribution parameter c must be > 1, got " + std::to_string(c));
  }
}

void check_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw ConfigError(std::string(name) + " must be > 0, got " + std::to_string(v));
  }
}

void check_layers(int K) {
  if (K < 1) throw ConfigError("layer count K must be >= 1, got " + std::to_string(K));
}

}  // namespace

std::vector<double> CascadeSpec::filter_mu() const {
  if (mode == CascadeMode::discrete) return mu_disc;
  std::vector<double> out(mu_cont.size());
  std::transform(mu_cont.begin(), mu_cont.end(), out.begin(),
                 [this](double m) { return m / dt; });
  return out;
}

double CascadeSpec::sigma(std::size_t layer) const { return std::sqrt(tau_levels.at(layer)); }

std::vector<double> scale_levels(double c, double tau0, int K) {
  check_c(c);
  check_positive(tau0, "tau0");
  check_layers(K);
  std::vector<double> out(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) out[k - 1] = tau0 * std::pow(c, 2.0 * k);
  return out;
}

double mu_limit(double c, double tau, int k) {
  check_c(c);
  check_positive(tau, "tau");
  if (k < 1) throw ConfigError("layer index k must be >= 1");
  return std::pow(c, -k) * std::sqrt(c * c - 1.0) * std::sqrt(tau);
}

std::vector<double> mu_limit_series(double c, double tau, int K) {
  check_layers(K);
  std::vector<double> out(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) out[k - 1] = mu_limit(c, tau, k);
  return out;
}

std::vector<double> mu_truncated(double c, double tau, int K) {
  check_c(c);
  check_positive(tau, "tau");
  check_layers(K);
  std::vector<double> out(static_cast<std::size_t>(K));
  const double s = std::sqrt(tau);
  out[0] = std::pow(c, 1.0 - K) * s;
  for (int k = 2; k <= K; ++k) {
    out[k - 1] = std::pow(c, static_cast<double>(k - K - 1)) * std::sqrt(c * c - 1.0) * s;
  }
  return out;
}

double mu_discrete(double delta_tau) {
  if (!std::isfinite(delta_tau) || delta_tau < 0.0) {
    throw ConfigError("scale increment must be >= 0, got " + std::to_string(delta_tau));
  }
  // (sqrt(1 + 4x) - 1) / 2 without the cancellation at small x.
  return 2.0 * delta_tau / (std::sqrt(1.0 + 4.0 * delta_tau) + 1.0);
}

CascadeSpec build_cascade(double c, double tau0, int K, double dt, CascadeMode mode) {
  check_positive(dt, "dt");
  CascadeSpec spec;
  spec.c = c;
  spec.tau0 = tau0;
  spec.K = K;
  spec.dt = dt;
  spec.mode = mode;
  spec.tau_levels = scale_levels(c, tau0, K);

  spec.mu_disc.resize(spec.layers());
  const double dt2 = dt * dt;
  for (std::size_t k = 0; k < spec.layers(); ++k) {
    // tau_1 stands in for all the layers below the first level.
    const double delta = k == 0 ? spec.tau_levels[0] : spec.tau_levels[k - 1] * (c * c - 1.0);
    spec.mu_disc[k] = mu_discrete(delta / dt2);
  }
  spec.mu_cont = mu_truncated(c, spec.tau_levels.back(), K);
  return spec;
}

int levels_for_sigma_max(double c, double tau0, double sigma_max) {
  check_c(c);
  check_positive(tau0, "tau0");
  check_positive(sigma_max, "sigma_max");
  const double ratio = std::log(sigma_max / std::sqrt(tau0)) / std::log(c);
  return std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
}

CascadeSpec default_cascade(double c, double sigma_min, double sigma_max, double dt,
                            CascadeMode mode) {
  check_c(c);
  check_positive(sigma_min, "sigma_min");
  if (!(sigma_max >= sigma_min)) throw ConfigError("sigma_max must be >= sigma_min");
  const double tau0 = sigma_min * sigma_min * std::pow(c, -16.0);
  return build_cascade(c, tau0, levels_for_sigma_max(c, tau0, sigma_max), dt, mode);
}

double mean_delay_continuous(double c, double tau) {
  check_c(c);
  check_positive(tau, "tau");
  return std::sqrt((c + 1.0) / (c - 1.0)) * std::sqrt(tau);
}

double tmax_delay_approx(double c, double tau) {
  check_c(c);
  check_positive(tau, "tau");
  return (c + 1.0) * (c + 1.0) * std::sqrt(tau) /
         (2.0 * std::sqrt(2.0) * std::sqrt((c - 1.0) * c * c * c));
}

double parabolic_offset(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (!(std::abs(denom) > 0.0) || !std::isfinite(denom)) return 0.0;
  const double off = 0.5 * (left - right) / denom;
  return std::clamp(off, -1.0, 1.0);
}

DelayMeasure delay_measures_discrete(const KernelSamples& kernel) {
  const auto& v = kernel.values;
  if (v.empty()) throw ConfigError("delay measures need a non-empty kernel");
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0) {
      throw ConfigError("delay measures need a finite nonnegative kernel");
    }
    mass += v[i];
    first += static_cast<double>(i) * v[i];
  }
  if (!(mass > 0.0)) throw ConfigError("delay measures need a kernel with positive mass");

  const auto peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  double pos = static_cast<double>(peak);
  if (peak > 0 && peak + 1 < v.size()) pos += parabolic_offset(v[peak - 1], v[peak], v[peak + 1]);

  DelayMeasure d;
  d.kind = DelayKind::discrete_empirical;
  d.mean_delay = kernel.t0 + kernel.dt * first / mass;
  d.tmax_delay = kernel.t0 + kernel.dt * pos;
  return d;
}

}  // namespace tcw
