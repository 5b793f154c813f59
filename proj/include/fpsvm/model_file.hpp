// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include "fpsvm/multiclass.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace fpsvm {

inline constexpr int kModelFormatVersion = 1;

/// Line-oriented text document (.fpsvm). Reals use shortest round-trip
/// decimal form, so load(save(m)) reproduces every stored double exactly.
/// The last line is a CRC-32 over all preceding bytes.
[[nodiscard]] std::string serialize_model(const OvoModel& model);

/// Throws Error(CorruptModel) on checksum or structural problems.
[[nodiscard]] OvoModel deserialize_model(std::string_view text);

void save_model(const OvoModel& model, const std::filesystem::path& path);
[[nodiscard]] OvoModel load_model(const std::filesystem::path& path);

} // namespace fpsvm
