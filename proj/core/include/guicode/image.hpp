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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace guicode {

class ImageError : public std::runtime_error {
 public:
  enum class Kind { kEmptyImage, kCanvasTooSmall, kIo };
  ImageError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Rgb8 {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb8&) const = default;
};

// 8-bit RGB, row-major, interleaved. What the rasterizer draws and PNG stores.
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, Rgb8 fill = {});

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }
  const std::vector<std::uint8_t>& bytes() const { return data_; }
  std::vector<std::uint8_t>& bytes() { return data_; }

  Rgb8 at(int x, int y) const;
  void set(int x, int y, Rgb8 c);

  bool operator==(const Raster&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// The model input: RGB, height x width x 3 row-major, values in [0, 1].
struct GuiImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  float at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  bool operator==(const GuiImage&) const = default;
};

GuiImage to_image(const Raster& raster);

// Nearest-neighbour resize to width x height, aspect ratio not preserved.
// Source pixel for destination x is floor((2x + 1) * src_w / (2 * dst_w)).
GuiImage resize_normalize(const Raster& raster, int width, int height);
GuiImage resize_normalize(const GuiImage& image, int width, int height);

void write_png(const std::filesystem::path& path, const Raster& raster);
Raster read_png(const std::filesystem::path& path);

}  // namespace guicode
