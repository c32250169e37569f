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

// On-disk datasets: NNNN.gui / NNNN.png pairs plus manifest.txt. Ids below
// `train_count` form the training split, the rest the test split.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "guicode/compile.hpp"
#include "guicode/dsl.hpp"
#include "guicode/eval.hpp"
#include "guicode/image.hpp"
#include "guicode/model.hpp"
#include "guicode/synth.hpp"

namespace guicode {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Manifest {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t test_count = 0;
  std::string theme;          // empty until rendered
  std::string theme_version;
  int image_size = 0;

  std::size_t train_count() const { return count - test_count; }
  bool operator==(const Manifest&) const = default;
};

std::string file_id(std::size_t index);

Manifest read_manifest(const std::filesystem::path& dir);
void write_manifest(const std::filesystem::path& dir, const Manifest& manifest);

// File i is synthesized from derive_seed(seed, {i}).
Manifest synth_dataset(const std::filesystem::path& dir, std::size_t count, std::size_t test_count,
                       std::uint64_t seed, const SynthParams& params = SynthParams::desk());
void render_dataset(const std::filesystem::path& dir, int size, const std::string& theme);
void compile_dataset(const std::filesystem::path& dir, Target target);

GuiAst read_gui(const std::filesystem::path& path);

enum class Split { kTrain, kTest, kAll };

struct LoadedFiles {
  std::vector<std::string> ids;
  std::vector<GuiImage> images;
  std::vector<std::vector<Token>> tokens;
};

// PNGs are resampled to image_size x image_size.
LoadedFiles load_split(const std::filesystem::path& dir, Split split, int image_size);

struct FileResult {
  std::string id;
  std::size_t expected_len = 0;
  std::size_t generated_len = 0;
  double error = 0.0;
};

struct EvalReport {
  std::vector<FileResult> files;
  double mean_error = 0.0;
  RocCurve roc;  // teacher-forced; empty when not requested
};

// Greedy when beam <= 1.
EvalReport evaluate_files(Model<float>& model, const LoadedFiles& files, std::size_t beam,
                          std::size_t max_len, bool with_roc);

std::string report_csv(const EvalReport& report);
std::string roc_csv(const RocCurve& curve);
std::string format_number(double v);

}  // namespace guicode
