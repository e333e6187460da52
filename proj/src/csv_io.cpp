// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/csv_io.hpp"

#include <charconv>
#include <cmath>

#include "tcw/error.hpp"

namespace tcw {
namespace {

void write_meta(std::ostream& os, const CsvMeta& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

void check(std::ostream& os) {
  if (!os) throw IoError("write failed");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void write_csv_row(std::ostream& os, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format_double(values[i]);
  }
  os << '\n';
}

void write_scalogram_csv(std::ostream& os, const Scalogram& s, const CsvMeta& extra) {
  const auto& m = s.meta;
  CsvMeta meta = {
      {"kind", to_string(m.kind)},
      {"order", std::to_string(m.order)},
      {"gamma", format_double(m.gamma)},
      {"c", format_double(m.c)},
      {"tau0", format_double(m.tau0)},
      {"dt", format_double(m.dt)},
      {"normalization", to_string(m.normalization)},
  };
  if (m.p > 0.0) meta.emplace_back("p", format_double(m.p));
  std::string taus;
  for (double tau : s.scales) taus += (taus.empty() ? "" : " ") + format_double(tau);
  meta.emplace_back("tau", taus);
  if (!s.delay_note.empty()) {
    std::string d;
    for (double v : s.delay_note) d += (d.empty() ? "" : " ") + format_double(v);
    meta.emplace_back("delay", d);
  }
  if (s.warmup_rows > 0) meta.emplace_back("warmup_rows", std::to_string(s.warmup_rows));
  meta.insert(meta.end(), extra.begin(), extra.end());
  write_meta(os, meta);

  os << 't';
  for (std::size_t k = 1; k <= s.cols(); ++k) os << ",scale_" << k;
  os << '\n';
  std::vector<double> row(s.cols() + 1);
  for (std::size_t t = 0; t < s.rows(); ++t) {
    row[0] = s.time(t);
    const auto r = s.row(t);
    std::copy(r.begin(), r.end(), row.begin() + 1);
    write_csv_row(os, row);
  }
  check(os);
}

void write_kernels_csv(std::ostream& os, const std::vector<Scalogram>& kernels,
                       std::span<const int> orders, const CsvMeta& meta) {
  if (kernels.size() != orders.size()) throw ConfigError("one order per kernel table is required");
  write_meta(os, meta);
  const std::size_t K = kernels.empty() ? 0 : kernels.front().cols();
  os << "t,n";
  for (std::size_t k = 1; k <= K; ++k) os << ",scale_" << k;
  os << '\n';
  std::vector<double> row(K + 2);
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const Scalogram& s = kernels[i];
    if (s.cols() != K) throw ConfigError("kernel tables differ in layer count");
    for (std::size_t t = 0; t < s.rows(); ++t) {
      row[0] = s.time(t);
      row[1] = orders[i];
      const auto r = s.row(t);
      std::copy(r.begin(), r.end(), row.begin() + 2);
      write_csv_row(os, row);
    }
  }
  check(os);
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "sigma_ref,sigma_hat,value,c,gamma,n\n";
  for (const auto& r : rows) {
    const double v[] = {r.sigma_ref, r.sigma_hat, r.value, r.c, r.gamma, double(r.order)};
    write_csv_row(os, v);
  }
  check(os);
}

void write_norms_csv(std::ostream& os, std::span<const NormRow> rows, const CsvMeta& meta) {
  write_meta(os, meta);
  os << "sigma,n,gamma,p,continuous,discrete\n";
  for (const auto& r : rows) {
    const double v[] = {r.sigma, double(r.order), r.gamma, r.p, r.continuous, r.discrete};
    write_csv_row(os, v);
  }
  check(os);
}

}  // namespace tcw
