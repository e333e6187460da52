// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/signals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string_view>

#include "tcw/error.hpp"
#include "tcw/oracle.hpp"

namespace tcw {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_coverage(double sigma_ref, std::size_t length, std::size_t center) {
  if (!std::isfinite(sigma_ref) || !(sigma_ref > 0.0)) {
    throw ConfigError("sigma_ref must be > 0");
  }
  const double reach = 8.0 * sigma_ref;
  if (static_cast<double>(center) < reach ||
      static_cast<double>(center) + reach > static_cast<double>(length) - 1.0) {
    throw ConfigError("signal of length " + std::to_string(length) + " centered at " +
                      std::to_string(center) + " does not cover +-8 sigma (" + fmt(reach) + ")");
  }
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

std::uint32_t le32(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}
std::uint16_t le16(const unsigned char* p) { return std::uint16_t(p[0] | p[1] << 8); }

void put32(std::ostream& os, std::uint32_t v) {
  const char b[4] = {char(v & 0xff), char(v >> 8 & 0xff), char(v >> 16 & 0xff), char(v >> 24)};
  os.write(b, 4);
}
void put16(std::ostream& os, std::uint16_t v) {
  const char b[2] = {char(v & 0xff), char(v >> 8)};
  os.write(b, 2);
}

}  // namespace

SignalBuffer gen_blob(double sigma_ref, std::size_t length, std::size_t center) {
  check_coverage(sigma_ref, length, center);
  const double tau = sigma_ref * sigma_ref;
  const std::size_t far = std::max(center, length - 1 - center);
  // Far beyond 40 sigma the kernel is below the double range anyway.
  const auto radius = static_cast<long>(
      std::min<double>(static_cast<double>(far), std::ceil(40.0 * sigma_ref) + 30.0));
  const auto T = discrete_gaussian_kernel(tau, radius);

  SignalBuffer s;
  s.samples.assign(length, 0.0);
  for (std::size_t i = 0; i < length; ++i) {
    const long m = static_cast<long>(i) - static_cast<long>(center);
    if (std::labs(m) <= radius) s.samples[i] = T[m + radius];
  }
  s.label = "blob sigma=" + fmt(sigma_ref);
  return s;
}

SignalBuffer gen_edge(double sigma_ref, std::size_t length, std::size_t center) {
  SignalBuffer s = gen_blob(sigma_ref, length, center);
  double acc = 0.0;
  for (double& v : s.samples) {
    acc += v;
    v = acc;
  }
  s.label = "edge sigma=" + fmt(sigma_ref);
  return s;
}

SignalBuffer gen_chirp(double a, double b, std::size_t length) {
  if (!std::isfinite(a) || a == 0.0 || !std::isfinite(b)) {
    throw ConfigError("chirp needs finite a != 0 and finite b");
  }
  SignalBuffer s;
  s.samples.resize(length);
  std::size_t clamped = 0;
  for (std::size_t t = 0; t < length; ++t) {
    double arg = (b - static_cast<double>(t)) / a;
    if (arg > 700.0) {
      arg = 700.0;
      ++clamped;
    }
    s.samples[t] = std::sin(std::exp(arg));
  }
  if (clamped > 0) {
    s.warnings.push_back("chirp: exponent clamped at 700 for " + std::to_string(clamped) +
                         " samples");
  }
  s.label = "chirp a=" + fmt(a) + " b=" + fmt(b);
  return s;
}

SignalBuffer gen_impulse(std::size_t length, std::size_t position, double amplitude) {
  if (position >= length) throw ConfigError("impulse position outside the signal");
  if (!std::isfinite(amplitude)) throw ConfigError("impulse amplitude must be finite");
  SignalBuffer s;
  s.samples.assign(length, 0.0);
  s.samples[position] = amplitude;
  s.label = "impulse";
  return s;
}

SignalBuffer gen_step(std::size_t length, std::size_t position) {
  if (position >= length) throw ConfigError("step position outside the signal");
  SignalBuffer s;
  s.samples.assign(length, 0.0);
  std::fill(s.samples.begin() + static_cast<std::ptrdiff_t>(position), s.samples.end(), 1.0);
  s.label = "step";
  return s;
}

SignalBuffer read_csv(const std::string& path, const std::string& column, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::size_t col = 0;
  bool by_name = false;
  if (!column.empty()) {
    const auto r = std::from_chars(column.data(), column.data() + column.size(), col);
    by_name = r.ec != std::errc() || r.ptr != column.data() + column.size();
  }

  SignalBuffer s;
  s.dt = dt;
  s.label = path;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split(view);
    if (first) {
      first = false;
      double probe = 0.0;
      const bool numeric = col < fields.size() && parse_number(fields[col], probe);
      if (by_name || !numeric) {
        if (by_name) {
          const auto it = std::find(fields.begin(), fields.end(), std::string_view(column));
          if (it == fields.end()) {
            std::string names;
            for (auto f : fields) names += (names.empty() ? "" : ", ") + std::string(f);
            throw IoError(path + ":" + std::to_string(lineno) + ": no column '" + column +
                          "' (available: " + names + ")");
          }
          col = static_cast<std::size_t>(it - fields.begin());
        } else if (col >= fields.size()) {
          throw IoError(path + ":" + std::to_string(lineno) + ": header has " +
                        std::to_string(fields.size()) + " columns, need column " +
                        std::to_string(col));
        }
        continue;
      }
    }
    if (col >= fields.size()) {
      throw IoError(path + ":" + std::to_string(lineno) + ": missing column " +
                    std::to_string(col));
    }
    double v = 0.0;
    if (!parse_number(fields[col], v) || !std::isfinite(v)) {
      throw IoError(path + ":" + std::to_string(lineno) + ": not a finite number: '" +
                    std::string(fields[col]) + "'");
    }
    s.samples.push_back(v);
  }
  if (in.bad()) throw IoError("read error on " + path);
  if (s.samples.empty()) throw IoError(path + ": no samples");
  return s;
}

SignalBuffer read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  auto fail = [&](std::size_t offset, const std::string& what) -> IoError {
    return IoError(path + ": byte " + std::to_string(offset) + ": " + what);
  };
  if (bytes.size() < 12 || std::string_view(reinterpret_cast<const char*>(bytes.data()), 4) != "RIFF" ||
      std::string_view(reinterpret_cast<const char*>(bytes.data()) + 8, 4) != "WAVE") {
    throw fail(0, "not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string_view id(reinterpret_cast<const char*>(bytes.data()) + pos, 4);
    const std::uint32_t size = le32(&bytes[pos + 4]);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw fail(pos, "chunk '" + std::string(id) + "' truncated");
    if (id == "fmt ") {
      if (size < 16) throw fail(pos, "fmt chunk too short");
      format = le16(&bytes[body]);
      channels = le16(&bytes[body + 2]);
      rate = le32(&bytes[body + 4]);
      bits = le16(&bytes[body + 14]);
      if (format == 0xFFFE && size >= 26) format = le16(&bytes[body + 24]);
      if (format != 1) throw fail(body, "unsupported encoding " + std::to_string(format) + " (need PCM)");
      if (bits != 16) throw fail(body + 14, "unsupported sample width " + std::to_string(bits));
      if (channels == 0) throw fail(body + 2, "zero channels");
      if (rate == 0) throw fail(body + 4, "zero sample rate");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw fail(pos, "data chunk before fmt chunk");
      const std::size_t frame = 2u * channels;
      const std::size_t frames = size / frame;
      SignalBuffer s;
      s.dt = 1.0 / rate;
      s.label = path;
      s.samples.resize(frames);
      for (std::size_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::size_t ch = 0; ch < channels; ++ch) {
          acc += static_cast<std::int16_t>(le16(&bytes[body + i * frame + 2 * ch])) / 32768.0;
        }
        s.samples[i] = acc / channels;
      }
      if (size % frame != 0) s.warnings.push_back("wav: trailing partial frame ignored");
      return s;
    }
    pos = body + size + (size & 1u);
  }
  throw fail(pos, "no data chunk");
}

void write_wav(const std::string& path, const SignalBuffer& signal, unsigned sample_rate) {
  if (sample_rate == 0) throw ConfigError("sample rate must be > 0");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  const auto n = static_cast<std::uint32_t>(signal.samples.size());
  out.write("RIFF", 4);
  put32(out, 36 + 2 * n);
  out.write("WAVEfmt ", 8);
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, sample_rate);
  put32(out, 2 * sample_rate);
  put16(out, 2);
  put16(out, 16);
  out.write("data", 4);
  put32(out, 2 * n);
  for (double v : signal.samples) {
    const double q = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  if (!out) throw IoError("write error on " + path);
}

void demean(SignalBuffer& signal) {
  if (signal.samples.empty()) return;
  const double mean = std::accumulate(signal.samples.begin(), signal.samples.end(), 0.0) /
                      static_cast<double>(signal.samples.size());
  for (double& v : signal.samples) v -= mean;
}

}  // namespace tcw
