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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "guicode/dsl.hpp"
#include "guicode/image.hpp"

namespace guicode {

// Colors plus geometry. Geometry is given for a 256x256 canvas and scaled
// per axis to the actual canvas, so one theme serves every canvas size.
struct RenderTheme {
  std::string name = "web";
  std::string version = "1";

  Rgb8 background{255, 255, 255};
  Rgb8 header_fill{248, 249, 250};
  Rgb8 panel_fill{233, 236, 239};
  Rgb8 text_bar{173, 181, 189};
  Rgb8 title_bar{52, 58, 64};
  Rgb8 btn_active{0, 123, 255};
  Rgb8 btn_inactive{108, 117, 125};
  Rgb8 btn_green{40, 167, 69};
  Rgb8 btn_orange{253, 126, 20};
  Rgb8 btn_red{220, 53, 69};

  int margin = 8;
  int header_height = 40;
  int gap = 8;
  int padding = 6;
  int corner_radius = 6;
  int button_width = 48;
  int button_height = 28;

  std::uint64_t text_seed = 0x7e17;

  Rgb8 leaf_color(Token kind) const;
  void validate() const;
};

// "default" (same as "web"), "web", "android", "ios".
RenderTheme theme_by_name(std::string_view name);
std::vector<std::string> theme_names();

inline constexpr int kMinCanvas = 64;

// Deterministic integer-only rasterization. Throws ImageError(kCanvasTooSmall)
// below 64x64.
Raster rasterize_raster(const GuiAst& ast, int width, int height, const RenderTheme& theme);
GuiImage rasterize(const GuiAst& ast, int width, int height, const RenderTheme& theme);

}  // namespace guicode
