// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#pragma once

#include <string>

#include "tcw/engine.hpp"

namespace tcw {

/// Binary snapshot of a ChannelBank, little-endian:
///   "TCWS", u32 version, f64 c, f64 tau0, f64 dt, u32 K, u8 mode,
///   u64 frame_index, then K f64 each of level, level_prev, prev2.
/// Written to a temporary file and renamed into place.
void save_state(const std::string& path, const ChannelBank& bank);

/// Restores `bank` from `path`. Throws ConfigError when the file was written
/// for a different cascade and IoError when it is unreadable or corrupt.
void load_state(const std::string& path, ChannelBank& bank);

inline constexpr unsigned kStateFileVersion = 1;

}  // namespace tcw
