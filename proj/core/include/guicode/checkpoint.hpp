// Copyright 2026 The guicode Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Binary checkpoint, little-endian throughout:
//   "GUICKPT\0"  u32 version
//   u32 length + model config text
//   u32 count + (u32 length + lexeme) per vocabulary symbol
//   u32 count + per tensor: u32 length + name, u32 rank, u64 dims, f32 values
//   u32 CRC-32 of every preceding byte

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "guicode/dsl.hpp"
#include "guicode/model.hpp"

namespace guicode {

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { kIo, kBadMagic, kVersionUnsupported, kChecksumMismatch, kConfigMismatch };
  CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  Model<float> model;
  Vocabulary vocab;
};

std::vector<std::uint8_t> encode_checkpoint(const Model<float>& model, const Vocabulary& vocab);
// Checks magic, version, checksum, then that every tensor matches the
// embedded config (and `expected`, when given).
Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes,
                             const std::optional<ModelConfig>& expected = std::nullopt);

void save_checkpoint(const std::filesystem::path& path, const Model<float>& model, const Vocabulary& vocab);
Checkpoint load_checkpoint(const std::filesystem::path& path,
                           const std::optional<ModelConfig>& expected = std::nullopt);

}  // namespace guicode
