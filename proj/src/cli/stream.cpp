// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include <charconv>
#include <cmath>
#include <filesystem>
#include <istream>
#include <ostream>

#include "commands.hpp"
#include "tcw/engine.hpp"
#include "tcw/error.hpp"
#include "tcw/state_file.hpp"

namespace tcw::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_sample(std::string_view s, double& v) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  return !s.empty() && r.ec == std::errc() && r.ptr == s.data() + s.size();
}

}  // namespace

void cmd_stream(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  const CascadeSpec spec = make_cascade(cfg, cfg.dt.value_or(1.0));
  const int order = cfg.order.value_or(0);
  if (order < 0 || order > 2) throw ConfigError("--order must be 0, 1 or 2");
  const double gamma = cfg.gamma.value_or(1.0);
  const auto choice = parse_normalization(cfg.normalization);
  const ColumnScaling scaling =
      order > 0 ? column_scaling(spec, order, gamma, choice) : ColumnScaling{};

  ChannelBank bank(spec);
  bool resumed = false;
  if (!cfg.state_file.empty() && std::filesystem::exists(cfg.state_file)) {
    load_state(cfg.state_file, bank);
    resumed = true;
  }

  const std::size_t K = spec.layers();
  if (!resumed) {
    CsvMeta meta = run_meta(spec, "stdin");
    meta.emplace_back("c", format_double(spec.c));
    meta.emplace_back("tau0", format_double(spec.tau0));
    meta.emplace_back("dt", format_double(spec.dt));
    meta.emplace_back("order", std::to_string(order));
    if (order > 0) {
      meta.emplace_back("gamma", format_double(gamma));
      meta.emplace_back("normalization", cfg.normalization);
    }
    for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
    out << 't';
    for (std::size_t k = 1; k <= K; ++k) out << ",scale_" << k;
    for (std::size_t k = 1; order > 0 && k <= K; ++k) out << ",d" << order << '_' << k;
    out << '\n' << std::flush;
  }

  std::vector<double> row(1 + K + (order > 0 ? K : 0));
  std::vector<double> diff(K);
  bool primed = resumed || !cfg.prime;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (view.empty()) continue;
    double x = 0.0;
    if (!parse_sample(view, x) || !std::isfinite(x)) {
      err << "stdin:" << lineno << ": skipping malformed sample '" << std::string(view) << "'\n";
      continue;
    }
    if (!primed) {
      bank.reset(x);
      primed = true;
    }
    const auto levels = bank.step(x);
    row[0] = static_cast<double>(bank.frame_index() - 1) * spec.dt;
    std::copy(levels.begin(), levels.end(), row.begin() + 1);
    if (order > 0) {
      bank.difference(order, diff);
      for (std::size_t k = 0; k < K; ++k) {
        const double f = scaling.values[k];
        row[1 + K + k] = scaling.divide ? diff[k] / f : diff[k] * f;
      }
    }
    write_csv_row(out, row);
    out.flush();
    if (!cfg.state_file.empty()) save_state(cfg.state_file, bank);
  }
  if (in.bad()) throw IoError("read error on standard input");
}

}  // namespace tcw::cli
