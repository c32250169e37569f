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

#include "guicode/image.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

namespace guicode {

Raster::Raster(int width, int height, Rgb8 fill)
    : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height * 3) {
  if (width < 0 || height < 0) throw ImageError(ImageError::Kind::kEmptyImage, "negative size");
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

Rgb8 Raster::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {data_[i], data_[i + 1], data_[i + 2]};
}

void Raster::set(int x, int y, Rgb8 c) {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  data_[i] = c.r;
  data_[i + 1] = c.g;
  data_[i + 2] = c.b;
}

GuiImage to_image(const Raster& raster) {
  GuiImage img{raster.width(), raster.height(), {}};
  img.data.resize(raster.bytes().size());
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    img.data[i] = static_cast<float>(raster.bytes()[i]) / 255.0f;
  }
  return img;
}

namespace {

int nearest(int dst, int src_extent, int dst_extent) {
  return static_cast<int>((2LL * dst + 1) * src_extent / (2LL * dst_extent));
}

template <typename Src, typename Get>
GuiImage resize_impl(const Src& src, int src_w, int src_h, int width, int height, Get get) {
  if (src_w <= 0 || src_h <= 0) throw ImageError(ImageError::Kind::kEmptyImage, "empty image");
  if (width <= 0 || height <= 0) {
    throw ImageError(ImageError::Kind::kEmptyImage, "empty target size");
  }
  GuiImage out{width, height, std::vector<float>(static_cast<std::size_t>(width) * height * 3)};
  for (int y = 0; y < height; ++y) {
    const int sy = nearest(y, src_h, height);
    for (int x = 0; x < width; ++x) {
      const int sx = nearest(x, src_w, width);
      for (int c = 0; c < 3; ++c) {
        out.data[(static_cast<std::size_t>(y) * width + x) * 3 + c] = get(src, sx, sy, c);
      }
    }
  }
  return out;
}

}  // namespace

GuiImage resize_normalize(const Raster& raster, int width, int height) {
  return resize_impl(raster, raster.width(), raster.height(), width, height,
                     [](const Raster& r, int x, int y, int c) {
                       const std::size_t i = (static_cast<std::size_t>(y) * r.width() + x) * 3;
                       return static_cast<float>(r.bytes()[i + c]) / 255.0f;
                     });
}

GuiImage resize_normalize(const GuiImage& image, int width, int height) {
  return resize_impl(image, image.width, image.height, width, height,
                     [](const GuiImage& im, int x, int y, int c) { return im.at(y, x, c); });
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void io_fail(const std::filesystem::path& path, const char* what) {
  throw ImageError(ImageError::Kind::kIo, std::string(what) + ": " + path.string());
}

}  // namespace

void write_png(const std::filesystem::path& path, const Raster& raster) {
  if (raster.empty()) throw ImageError(ImageError::Kind::kEmptyImage, "empty raster");
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) io_fail(path, "cannot open for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    io_fail(path, "png allocation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    io_fail(path, "png write failed");
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width()),
               static_cast<png_uint_32>(raster.height()), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  const auto* base = raster.bytes().data();
  for (int y = 0; y < raster.height(); ++y) {
    png_write_row(png, base + static_cast<std::size_t>(y) * raster.width() * 3);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Raster read_png(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) io_fail(path, "cannot open for reading");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    io_fail(path, "png allocation failed");
  }
  Raster raster;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    io_fail(path, "png read failed");
  }
  png_init_io(png, file.get());
  png_read_info(png, info);

  // Normalize every layout to 8-bit RGB.
  const auto color = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    if (png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_set_gray_to_rgb(png);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  raster = Raster(w, h);
  for (int y = 0; y < h; ++y) {
    png_read_row(png, raster.bytes().data() + static_cast<std::size_t>(y) * w * 3, nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return raster;
}

}  // namespace guicode
