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

// Flat `key = value` configuration files. Blank lines and lines starting
// with '#' are ignored. An optional `preset` key (paper, desk, micro) seeds
// the model and training fields before the remaining keys override them.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "guicode/model.hpp"
#include "guicode/train.hpp"

namespace guicode {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Training defaults per preset. "paper" is TrainConfig{}; the smaller
// presets take larger, more frequent steps.
TrainConfig train_preset(std::string_view name);

struct RunConfig {
  ModelConfig model = ModelConfig::desk();
  TrainConfig train = train_preset("desk");

  bool operator==(const RunConfig&) const = default;
};

ModelConfig preset(std::string_view name);

// Model keys only; exact for every double.
std::string to_text(const ModelConfig& config);
std::string to_text(const RunConfig& config);

// Unknown keys, malformed values and invalid results throw ConfigError.
RunConfig parse_run_config(std::string_view text);
ModelConfig parse_model_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace guicode
