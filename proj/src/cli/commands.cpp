// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "tcw/engine.hpp"
#include "tcw/error.hpp"
#include "tcw/oracle.hpp"
#include "tcw/scale_selection.hpp"
#include "tcw/wavelets.hpp"

namespace tcw::cli {
namespace {

void write_file(const std::string& path, const auto& writer) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  writer(f);
  f.flush();
  if (!f) throw IoError("write error on " + path);
}

// Raw per-layer kernels for orders 0..2 over N + 2 samples.
std::vector<Scalogram> kernel_tables(const CascadeSpec& spec, std::size_t N) {
  const Scalogram smooth = impulse_responses(spec, N + 2);
  return {smooth, temporal_derivative(smooth, 1), temporal_derivative(smooth, 2)};
}

std::size_t kernel_length(const RunConfig& cfg, const CascadeSpec& spec) {
  return cfg.length.value_or(required_kernel_length(spec, spec.layers() - 1));
}

// Norm at tau = 1 carried to tau by the scaling law of the limit kernel.
double continuous_norm(double base, double c, double tau, int order, double p, double gamma) {
  const double j = std::log(tau) / (2.0 * std::log(c));
  return std::pow(tau, order * gamma / 2.0) * norm_at_level(base, c, j, order, p);
}

}  // namespace

ColumnScaling column_scaling(const CascadeSpec& spec, int order, double gamma,
                             const NormalizationChoice& choice) {
  ColumnScaling s;
  s.values.resize(spec.layers());
  for (std::size_t k = 0; k < spec.layers(); ++k) {
    s.values[k] = std::pow(spec.tau_levels[k], order * gamma / 2.0);
  }
  if (choice.kind == Normalization::lp_discrete) {
    s.values = discrete_lp_norms(spec, order, choice.p, 0.0);
    s.divide = true;
  } else if (choice.kind == Normalization::lp_continuous) {
    const double p = gamma_to_p(order, gamma);
    const double base = limit_kernel_norm(spec.c, 1.0, order, p, 0.0);
    // Differences are per sample, so the continuous norm picks up dt^n.
    for (std::size_t k = 0; k < spec.layers(); ++k) {
      s.values[k] = continuous_norm(base, spec.c, spec.tau_levels[k], order, p, 0.0) *
                    std::pow(spec.dt, order);
    }
    s.divide = true;
  }
  return s;
}

Scalogram normalize(const Scalogram& d, const NormalizationChoice& choice, double gamma,
                    const CascadeSpec& spec) {
  if (choice.kind == Normalization::gamma_power) return scale_normalize(d, gamma);
  if (choice.kind == Normalization::none) return d;
  const int n = d.meta.order;
  const double p = choice.kind == Normalization::lp_discrete ? choice.p : gamma_to_p(n, gamma);
  Scalogram out =
      mother_wavelet_normalize(d, p, column_scaling(spec, n, gamma, choice).values, choice.kind);
  out.meta.gamma = gamma;
  return out;
}

void cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Prepared prep = prepare(cfg, err);
  const CascadeSpec& spec = prep.spec;
  const auto choice = parse_normalization(cfg.normalization);
  const double gamma = cfg.gamma.value_or(1.0);
  const int order = cfg.order.value_or(1);
  if (order < 0 || order > 2) throw ConfigError("--order must be 0, 1 or 2");
  if (cfg.dump_kernels && cfg.out.empty()) throw ConfigError("--dump-kernels needs --out");

  const auto& x = prep.signal.samples;
  const double initial = cfg.prime && !x.empty() ? x.front() : 0.0;
  ChannelBank bank(spec, initial);
  const Scalogram smooth = bank.run(x);
  const Scalogram d1 = normalize(temporal_derivative(smooth, 1), choice, gamma, spec);
  const Scalogram d2 = normalize(temporal_derivative(smooth, 2), choice, gamma, spec);
  const Scalogram qq = quasi_quadrature(d1, d2, cfg.quad_C);
  CsvMeta meta = run_meta(spec, cfg.input);
  if (cfg.prime) meta.emplace_back("primed", "1");

  if (cfg.out.empty()) {
    if (cfg.emit == "smooth") {
      write_scalogram_csv(out, smooth, meta);
    } else if (cfg.emit == "derivative") {
      if (order == 0) {
        write_scalogram_csv(out, smooth, meta);
      } else {
        write_scalogram_csv(out, order == 1 ? d1 : d2, meta);
      }
    } else if (cfg.emit == "qq") {
      meta.emplace_back("C", format_double(cfg.quad_C));
      write_scalogram_csv(out, qq, meta);
    } else if (cfg.emit == "bandpass") {
      write_scalogram_csv(out, bandpass(smooth, x), meta);
    } else {
      throw ConfigError("--emit must be smooth, derivative, qq or bandpass");
    }
    return;
  }

  const std::string& p = cfg.out;
  write_file(p + ".smooth.csv", [&](std::ostream& f) { write_scalogram_csv(f, smooth, meta); });
  write_file(p + ".d1.csv", [&](std::ostream& f) { write_scalogram_csv(f, d1, meta); });
  write_file(p + ".d2.csv", [&](std::ostream& f) { write_scalogram_csv(f, d2, meta); });
  CsvMeta qmeta = meta;
  qmeta.emplace_back("C", format_double(cfg.quad_C));
  write_file(p + ".qq.csv", [&](std::ostream& f) { write_scalogram_csv(f, qq, qmeta); });
  write_file(p + ".bandpass.csv",
             [&](std::ostream& f) { write_scalogram_csv(f, bandpass(smooth, x), meta); });
  if (cfg.dump_kernels) {
    const auto tables = kernel_tables(spec, kernel_length(cfg, spec));
    const int orders[] = {0, 1, 2};
    write_file(p + ".kernels.csv",
               [&](std::ostream& f) { write_kernels_csv(f, tables, orders, meta); });
  }
}

void cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const CascadeSpec spec = make_cascade(cfg, cfg.dt.value_or(1.0));
  const auto tables = kernel_tables(spec, kernel_length(cfg, spec));
  CsvMeta meta = run_meta(spec, "impulse");
  meta.emplace_back("c", format_double(spec.c));
  meta.emplace_back("tau0", format_double(spec.tau0));
  meta.emplace_back("dt", format_double(spec.dt));
  std::string taus;
  for (double tau : spec.tau_levels) taus += (taus.empty() ? "" : " ") + format_double(tau);
  meta.emplace_back("tau", taus);
  const int orders[] = {0, 1, 2};
  write_kernels_csv(out, tables, orders, meta);
}

void cmd_norms(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const CascadeSpec spec = make_cascade(cfg, cfg.dt.value_or(1.0));
  const double gamma = cfg.gamma.value_or(1.0);
  std::vector<int> orders{1, 2};
  if (cfg.order) {
    if (*cfg.order != 1 && *cfg.order != 2) throw ConfigError("--order must be 1 or 2 for norms");
    orders = {*cfg.order};
  }
  std::vector<NormRow> rows;
  for (int n : orders) {
    for (double p : cfg.p_values) {
      if (!(p > 0.0)) throw ConfigError("--p values must be > 0");
      const auto discrete = discrete_lp_norms(spec, n, p, gamma);
      const double base = limit_kernel_norm(spec.c, 1.0, n, p, 0.0);
      for (std::size_t k = 0; k < spec.layers(); ++k) {
        // Discrete kernels hold per-sample weights dt * Psi(i dt), so the
        // continuous norm is carried over by dt^(n + 1 - 1/p).
        const double cont = continuous_norm(base, spec.c, spec.tau_levels[k], n, p, gamma) *
                            std::pow(spec.dt, n + 1.0 - 1.0 / p);
        rows.push_back({spec.sigma(k), n, gamma, p, cont, discrete[k]});
      }
    }
  }
  CsvMeta meta = run_meta(spec, "none");
  meta.emplace_back("c", format_double(spec.c));
  meta.emplace_back("tau0", format_double(spec.tau0));
  meta.emplace_back("dt", format_double(spec.dt));
  write_norms_csv(out, rows, meta);
}

void cmd_scalesel(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  SignalModel model;
  if (cfg.model == "blob") {
    model = SignalModel::blob;
  } else if (cfg.model == "edge") {
    model = SignalModel::edge;
  } else {
    throw ConfigError("--model must be blob or edge, got '" + cfg.model + "'");
  }
  SweepConfig sweep = default_sweep(model, parse_c(cfg.c), cfg.sigma_refs);
  if (cfg.gamma) sweep.gamma = *cfg.gamma;
  if (cfg.order) sweep.order = *cfg.order;
  if (sweep.order != 1 && sweep.order != 2) throw ConfigError("--order must be 1 or 2");
  if (cfg.sigma_min) sweep.sigma_min = *cfg.sigma_min;
  if (cfg.sigma_max) sweep.sigma_max = *cfg.sigma_max;
  const auto rows = scale_selection_sweep(sweep);
  write_sweep_csv(out, rows);
}

}  // namespace tcw::cli
