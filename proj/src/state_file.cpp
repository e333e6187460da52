// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/state_file.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "tcw/error.hpp"

namespace tcw {
namespace {

class Writer {
 public:
  template <typename T>
  void put(T v) {
    std::uint64_t bits = 0;
    if constexpr (std::is_same_v<T, double>) {
      bits = std::bit_cast<std::uint64_t>(v);
    } else {
      bits = static_cast<std::uint64_t>(v);
    }
    for (std::size_t i = 0; i < sizeof(T); ++i) buf_.push_back(char(bits >> (8 * i) & 0xff));
  }
  void raw(const char* s, std::size_t n) { buf_.insert(buf_.end(), s, s + n); }
  const std::vector<char>& bytes() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  Reader(std::vector<char> bytes, std::string path) : buf_(std::move(bytes)), path_(std::move(path)) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > buf_.size()) {
      throw IoError(path_ + ": state file truncated at byte " + std::to_string(pos_));
    }
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      bits |= std::uint64_t(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    if constexpr (std::is_same_v<T, double>) {
      return std::bit_cast<double>(bits);
    } else {
      return static_cast<T>(bits);
    }
  }
  bool at_end() const { return pos_ == buf_.size(); }

 private:
  std::vector<char> buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_state(const std::string& path, const ChannelBank& bank) {
  const CascadeSpec& spec = bank.spec();
  Writer w;
  w.raw("TCWS", 4);
  w.put<std::uint32_t>(kStateFileVersion);
  w.put(spec.c);
  w.put(spec.tau0);
  w.put(spec.dt);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(spec.K));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(spec.mode));
  w.put<std::uint64_t>(bank.frame_index());
  for (double v : bank.level()) w.put(v);
  for (double v : bank.level_prev()) w.put(v);
  for (double v : bank.prev2()) w.put(v);

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write state file " + tmp);
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    out.flush();
    if (!out) throw IoError("write error on state file " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("cannot move state file into place at " + path);
  }
}

void load_state(const std::string& path, ChannelBank& bank) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open state file " + path);
  Reader r(std::vector<char>((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()),
           path);
  char magic[4];
  for (char& ch : magic) ch = static_cast<char>(r.get<std::uint8_t>());
  if (std::memcmp(magic, "TCWS", 4) != 0) throw IoError(path + ": not a state file");
  const auto version = r.get<std::uint32_t>();
  if (version != kStateFileVersion) {
    throw IoError(path + ": unsupported state file version " + std::to_string(version));
  }
  const double c = r.get<double>();
  const double tau0 = r.get<double>();
  const double dt = r.get<double>();
  const auto K = r.get<std::uint32_t>();
  const auto mode = r.get<std::uint8_t>();
  const auto frame = r.get<std::uint64_t>();

  const CascadeSpec& spec = bank.spec();
  if (c != spec.c || tau0 != spec.tau0 || dt != spec.dt || K != static_cast<std::uint32_t>(spec.K) ||
      mode != static_cast<std::uint8_t>(spec.mode)) {
    throw ConfigError(path + ": state was saved for a different cascade (c, tau0, dt, K or mode)");
  }
  std::vector<double> level(K), prev(K), prev2(K);
  for (auto& v : level) v = r.get<double>();
  for (auto& v : prev) v = r.get<double>();
  for (auto& v : prev2) v = r.get<double>();
  if (!r.at_end()) throw IoError(path + ": trailing bytes in state file");
  bank.restore(std::move(level), std::move(prev), std::move(prev2), frame);
}

}  // namespace tcw
