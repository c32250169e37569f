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

#include "guicode/render.hpp"

#include <algorithm>
#include <stdexcept>

#include "guicode/rng.hpp"

namespace guicode {

Rgb8 RenderTheme::leaf_color(Token kind) const {
  switch (kind) {
    case Token::kBtnActive:
      return btn_active;
    case Token::kBtnInactive:
      return btn_inactive;
    case Token::kBtnGreen:
      return btn_green;
    case Token::kBtnOrange:
      return btn_orange;
    case Token::kBtnRed:
      return btn_red;
    case Token::kText:
      return text_bar;
    case Token::kSmallTitle:
      return title_bar;
    default:
      throw std::invalid_argument("not a leaf kind: " + std::string(lexeme(kind)));
  }
}

void RenderTheme::validate() const {
  for (int v : {margin, header_height, gap, padding, corner_radius, button_width, button_height}) {
    if (v < 0) throw std::invalid_argument("theme geometry must be non-negative");
  }
}

RenderTheme theme_by_name(std::string_view name) {
  RenderTheme t;
  if (name == "default" || name == "web") return t;
  if (name == "android") {
    t.name = "android";
    t.background = {250, 250, 250};
    t.header_fill = {0, 150, 136};
    t.panel_fill = {224, 224, 224};
    t.text_bar = {158, 158, 158};
    t.title_bar = {33, 33, 33};
    t.btn_active = {63, 81, 181};
    t.btn_inactive = {255, 255, 255};
    t.btn_green = {76, 175, 80};
    t.btn_orange = {255, 152, 0};
    t.btn_red = {244, 67, 54};
    t.margin = 0;
    t.header_height = 48;
    t.corner_radius = 2;
    t.padding = 8;
    return t;
  }
  if (name == "ios") {
    t.name = "ios";
    t.background = {242, 242, 247};
    t.header_fill = {249, 249, 249};
    t.panel_fill = {255, 255, 255};
    t.text_bar = {199, 199, 204};
    t.title_bar = {0, 0, 0};
    t.btn_active = {0, 122, 255};
    t.btn_inactive = {142, 142, 147};
    t.btn_green = {52, 199, 89};
    t.btn_orange = {255, 149, 0};
    t.btn_red = {255, 59, 48};
    t.header_height = 44;
    t.corner_radius = 10;
    t.gap = 10;
    return t;
  }
  throw std::invalid_argument("unknown theme: " + std::string(name));
}

std::vector<std::string> theme_names() { return {"default", "web", "android", "ios"}; }

namespace {

struct Rect {
  int x0, y0, x1, y1;  // half-open
  int w() const { return x1 - x0; }
  int h() const { return y1 - y0; }
};

class Canvas {
 public:
  Canvas(int width, int height, const RenderTheme& theme)
      : raster_(width, height, theme.background), width_(width), height_(height) {}

  int sx(int v) const { return scale(v, width_); }
  int sy(int v) const { return scale(v, height_); }

  // Pixel (x, y) is covered when its center lies inside the rounded
  // rectangle. Computed on doubled coordinates so everything stays integral.
  void fill_rounded(Rect r, int radius, Rgb8 color) {
    r.x0 = std::max(r.x0, 0);
    r.y0 = std::max(r.y0, 0);
    r.x1 = std::min(r.x1, width_);
    r.y1 = std::min(r.y1, height_);
    if (r.w() <= 0 || r.h() <= 0) return;
    radius = std::clamp(radius, 0, std::min(r.w(), r.h()) / 2);
    for (int y = r.y0; y < r.y1; ++y) {
      for (int x = r.x0; x < r.x1; ++x) {
        if (inside_corner(r, radius, x, y)) raster_.set(x, y, color);
      }
    }
  }

  Raster take() && { return std::move(raster_); }

 private:
  static int scale(int v, int extent) {
    if (v == 0) return 0;
    return std::max(1, v * extent / 256);
  }

  static bool inside_corner(const Rect& r, int radius, int x, int y) {
    if (radius == 0) return true;
    const int cx = x < r.x0 + radius ? r.x0 + radius : x >= r.x1 - radius ? r.x1 - radius : -1;
    const int cy = y < r.y0 + radius ? r.y0 + radius : y >= r.y1 - radius ? r.y1 - radius : -1;
    if (cx < 0 || cy < 0) return true;
    const long dx = 2L * cx - (2L * x + 1);
    const long dy = 2L * cy - (2L * y + 1);
    return dx * dx + dy * dy <= 4L * radius * radius;
  }

  Raster raster_;
  int width_;
  int height_;
};

void draw_leaf(Canvas& canvas, const RenderTheme& theme, Token kind, Rect cell,
               std::uint64_t cell_seed) {
  const int pad_x = std::min(canvas.sx(theme.padding), cell.w() / 4);
  const int pad_y = std::min(canvas.sy(theme.padding), cell.h() / 4);
  const Rect inner{cell.x0 + pad_x, cell.y0 + pad_y, cell.x1 - pad_x, cell.y1 - pad_y};
  if (inner.w() <= 0 || inner.h() <= 0) return;
  const int radius = canvas.sx(theme.corner_radius) / 2;
  Rng rng(derive_seed(theme.text_seed, {cell_seed}));

  if (kind == Token::kText) {
    // Three label lines of random length, each at least 40% of the width.
    const int line_h = std::max(1, inner.h() / 7);
    for (int line = 0; line < 3; ++line) {
      const int y0 = inner.y0 + line_h * (2 * line + 1) - line_h / 2;
      const int min_w = std::max(1, inner.w() * 2 / 5);
      const int w = min_w + static_cast<int>(rng.uniform_index(inner.w() - min_w + 1));
      canvas.fill_rounded({inner.x0, y0, inner.x0 + w, y0 + line_h}, 0, theme.text_bar);
    }
    return;
  }
  if (kind == Token::kSmallTitle) {
    const int bar_h = std::max(2, inner.h() / 3);
    const int min_w = std::max(1, inner.w() / 2);
    const int spread = std::max(1, inner.w() * 9 / 10 - min_w + 1);
    const int w = min_w + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(spread)));
    const int y0 = inner.y0 + (inner.h() - bar_h) / 2;
    canvas.fill_rounded({inner.x0, y0, inner.x0 + w, y0 + bar_h}, 0, theme.title_bar);
    return;
  }
  const int bh = std::min(inner.h(), std::max(2, canvas.sy(theme.button_height)));
  const int y0 = inner.y0 + (inner.h() - bh) / 2;
  canvas.fill_rounded({inner.x0, y0, inner.x1, y0 + bh}, radius, theme.leaf_color(kind));
}

void draw_header(Canvas& canvas, const RenderTheme& theme, const GuiNode& header, Rect bar) {
  canvas.fill_rounded(bar, canvas.sx(theme.corner_radius), theme.header_fill);
  const auto n = static_cast<int>(header.children.size());
  if (n == 0) return;
  const int pad_x = canvas.sx(theme.padding);
  const int pad_y = std::min(canvas.sy(theme.padding), bar.h() / 4);
  const int gap = canvas.sx(theme.gap);
  const int avail = bar.w() - 2 * pad_x - (n - 1) * gap;
  const int bw = std::max(1, std::min(canvas.sx(theme.button_width), avail / n));
  for (int i = 0; i < n; ++i) {
    const int x0 = bar.x0 + pad_x + i * (bw + gap);
    canvas.fill_rounded({x0, bar.y0 + pad_y, x0 + bw, bar.y1 - pad_y},
                        canvas.sx(theme.corner_radius) / 2,
                        theme.leaf_color(header.children[static_cast<std::size_t>(i)].kind));
  }
}

}  // namespace

Raster rasterize_raster(const GuiAst& ast, int width, int height, const RenderTheme& theme) {
  if (width < kMinCanvas || height < kMinCanvas) {
    throw ImageError(ImageError::Kind::kCanvasTooSmall,
                     "canvas must be at least " + std::to_string(kMinCanvas) + "x" +
                         std::to_string(kMinCanvas));
  }
  validate(ast);
  theme.validate();
  Canvas canvas(width, height, theme);

  const int mx = canvas.sx(theme.margin);
  const int my = canvas.sy(theme.margin);
  const int gap_x = canvas.sx(theme.gap);
  const int gap_y = canvas.sy(theme.gap);
  int top = my;

  std::vector<const GuiNode*> rows;
  for (const auto& child : ast.children) {
    if (child.kind == Token::kHeader) {
      const Rect bar{mx, top, width - mx, top + canvas.sy(theme.header_height)};
      draw_header(canvas, theme, child, bar);
      top = bar.y1 + gap_y;
    } else {
      rows.push_back(&child);
    }
  }
  if (rows.empty()) return std::move(canvas).take();

  // Rows share the remaining height equally; columns share the row width.
  const int n_rows = static_cast<int>(rows.size());
  const int row_h = std::max(1, (height - my - top - (n_rows - 1) * gap_y) / n_rows);
  for (int r = 0; r < n_rows; ++r) {
    const int y0 = top + r * (row_h + gap_y);
    const auto& cols = rows[static_cast<std::size_t>(r)]->children;
    const int n_cols = static_cast<int>(cols.size());
    if (n_cols == 0) continue;
    const int col_w = std::max(1, (width - 2 * mx - (n_cols - 1) * gap_x) / n_cols);
    for (int c = 0; c < n_cols; ++c) {
      const int x0 = mx + c * (col_w + gap_x);
      const Rect cell{x0, y0, x0 + col_w, y0 + row_h};
      canvas.fill_rounded(cell, canvas.sx(theme.corner_radius), theme.panel_fill);
      const auto& column = cols[static_cast<std::size_t>(c)];
      // Leaves stack vertically inside their column.
      const int n_leaves = static_cast<int>(column.children.size());
      for (int l = 0; l < n_leaves; ++l) {
        const Rect slot{cell.x0, cell.y0 + l * cell.h() / n_leaves, cell.x1,
                        cell.y0 + (l + 1) * cell.h() / n_leaves};
        draw_leaf(canvas, theme, column.children[static_cast<std::size_t>(l)].kind, slot,
                  (static_cast<std::uint64_t>(r) << 32) | (static_cast<std::uint64_t>(c) << 16) |
                      static_cast<std::uint64_t>(l));
      }
    }
  }
  return std::move(canvas).take();
}

GuiImage rasterize(const GuiAst& ast, int width, int height, const RenderTheme& theme) {
  return to_image(rasterize_raster(ast, width, height, theme));
}

}  // namespace guicode
