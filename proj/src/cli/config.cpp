// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "tcw/error.hpp"
#include "tcw/scale_selection.hpp"

namespace tcw::cli {
namespace {

double parse_real(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (b != e && *b == '+') ++b;
  const auto r = std::from_chars(b, e, v);
  if (b == e || r.ec != std::errc() || r.ptr != e || !std::isfinite(v)) {
    throw ConfigError(what + ": not a number: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

// Length that places a blob or edge after the warm-up region and leaves room
// for the coarsest channel to respond.
std::size_t model_center(const CascadeSpec& spec, double sigma) {
  return warmup_rows(spec) + static_cast<std::size_t>(std::ceil(8.0 * sigma / spec.dt)) + 1;
}

std::size_t model_length(const CascadeSpec& spec, double sigma, std::size_t center) {
  const double delay = mean_delay_continuous(spec.c, spec.tau_levels.back()) / spec.dt;
  return center + static_cast<std::size_t>(std::ceil(8.0 * sigma / spec.dt)) +
         static_cast<std::size_t>(std::ceil(4.0 * delay)) + 1;
}

}  // namespace

double parse_c(const std::string& text) {
  if (text == "sqrt2" || text == "sqrt(2)") return std::sqrt(2.0);
  return parse_real(text, "--c");
}

CascadeSpec make_cascade(const RunConfig& cfg, double dt) {
  const double c = parse_c(cfg.c);
  CascadeMode mode;
  if (cfg.cascade == "discrete") {
    mode = CascadeMode::discrete;
  } else if (cfg.cascade == "sampled") {
    mode = CascadeMode::continuous_truncated;
  } else {
    throw ConfigError("--cascade must be 'discrete' or 'sampled', got '" + cfg.cascade + "'");
  }
  if (cfg.levels && cfg.sigma_max) throw ConfigError("--levels and --sigma-max are exclusive");
  const double sigma_min = cfg.sigma_min.value_or(1.0);
  const double sigma_max = cfg.sigma_max.value_or(64.0);
  if (!(sigma_min > 0.0)) throw ConfigError("--sigma-min must be > 0");

  // Eight levels at or below sigma_min unless tau0 is given.
  const double tau0 = cfg.tau0.value_or(sigma_min * sigma_min * std::pow(c, -16.0));
  const int K = cfg.levels ? *cfg.levels : levels_for_sigma_max(c, tau0, sigma_max);
  return build_cascade(c, tau0, K, dt, mode);
}

NormalizationChoice parse_normalization(const std::string& text) {
  if (text == "gamma") return {Normalization::gamma_power, 0.0};
  if (text == "mother") return {Normalization::lp_continuous, 0.0};
  if (starts_with(text, "lp:")) {
    const double p = parse_real(text.substr(3), "--normalization lp:P");
    if (!(p > 0.0)) throw ConfigError("--normalization lp:P needs P > 0");
    return {Normalization::lp_discrete, p};
  }
  throw ConfigError("--normalization must be gamma, lp:P or mother, got '" + text + "'");
}

Prepared prepare(const RunConfig& cfg, std::ostream& err) {
  const std::string& in = cfg.input;
  if (in.empty()) throw ConfigError("--input is required");
  if (cfg.demean && cfg.no_demean) throw ConfigError("--demean and --no-demean are exclusive");

  Prepared r;
  bool from_file = false;
  if (starts_with(in, "csv:")) {
    std::string rest = in.substr(4);
    std::string column;
    const auto colon = rest.rfind(':');
    if (colon != std::string::npos && rest.find('/', colon) == std::string::npos) {
      column = rest.substr(colon + 1);
      rest = rest.substr(0, colon);
    }
    r.signal = read_csv(rest, column, cfg.dt.value_or(1.0));
    from_file = true;
  } else if (starts_with(in, "wav:")) {
    r.signal = read_wav(in.substr(4));
    if (cfg.dt) r.signal.dt = *cfg.dt;
    from_file = true;
  }

  const double dt = from_file ? r.signal.dt : cfg.dt.value_or(1.0);
  r.spec = make_cascade(cfg, dt);
  const CascadeSpec& spec = r.spec;

  if (!from_file) {
    if (!starts_with(in, "gen:")) {
      throw ConfigError("--input must start with csv:, wav: or gen:, got '" + in + "'");
    }
    const auto parts = split_on(in.substr(4), ':');
    const std::string& kind = parts[0];
    auto arg = [&](const char* what) -> std::string {
      if (parts.size() != 2 || parts[1].empty()) {
        throw ConfigError("--input gen:" + kind + " needs a parameter (" + what + ")");
      }
      return parts[1];
    };
    if (kind == "blob" || kind == "edge") {
      const double sigma = parse_real(arg("sigma"), "--input gen:" + kind);
      if (!(sigma > 0.0)) throw ConfigError("generator sigma must be > 0");
      // Generators work in samples.
      const double s_samples = sigma / dt;
      const std::size_t center = model_center(spec, sigma);
      const std::size_t length = cfg.length.value_or(model_length(spec, sigma, center));
      r.signal = kind == "blob" ? gen_blob(s_samples, length, center)
                                : gen_edge(s_samples, length, center);
    } else if (kind == "chirp") {
      const auto ab = split_on(arg("a,b"), ',');
      if (ab.size() != 2) throw ConfigError("--input gen:chirp:a,b needs two numbers");
      r.signal = gen_chirp(parse_real(ab[0], "chirp a"), parse_real(ab[1], "chirp b"),
                           cfg.length.value_or(2000));
    } else if (kind == "impulse" || kind == "step") {
      if (parts.size() > 1) throw ConfigError("--input gen:" + kind + " takes no parameter");
      const std::size_t length = cfg.length.value_or(1024);
      if (length == 0) throw ConfigError("--length must be > 0");
      r.signal = kind == "impulse" ? gen_impulse(length, 0) : gen_step(length, 0);
    } else {
      throw ConfigError("unknown generator '" + kind + "'");
    }
    r.signal.dt = dt;
  }

  const bool demean_on = cfg.demean || (from_file && !cfg.no_demean);
  if (demean_on) demean(r.signal);
  for (const auto& w : r.signal.warnings) err << "warning: " << w << '\n';
  return r;
}

CsvMeta run_meta(const CascadeSpec& spec, const std::string& input) {
  return {
      {"input", input},
      {"K", std::to_string(spec.K)},
      {"cascade", spec.mode == CascadeMode::discrete ? "discrete" : "sampled"},
  };
}

}  // namespace tcw::cli
