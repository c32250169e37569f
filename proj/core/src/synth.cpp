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

#include "guicode/synth.hpp"

#include <algorithm>
#include <stdexcept>

#include "guicode/rng.hpp"

namespace guicode {
namespace {

bool has_duplicates(std::vector<Token> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

}  // namespace

void SynthParams::validate() const {
  if (max_rows < 1) throw std::invalid_argument("max_rows must be >= 1");
  if (has_duplicates(column_kinds) || has_duplicates(leaf_palette)) {
    throw std::invalid_argument("decision sets must not repeat kinds");
  }
  if (column_kinds.empty()) throw std::invalid_argument("no column kinds");
  for (Token k : column_kinds) {
    if (column_count(k) == 0) throw std::invalid_argument("not a column kind");
  }
  if (leaf_palette.empty()) throw std::invalid_argument("empty leaf palette");
  for (Token t : leaf_palette) {
    if (!is_leaf(t)) throw std::invalid_argument("leaf palette holds a non-leaf");
  }
  if (header_buttons_min < 0 || header_buttons_max < header_buttons_min) {
    throw std::invalid_argument("empty header button range");
  }
  if (header_buttons_max > 0 && header_palette().empty()) {
    throw std::invalid_argument("header buttons requested but palette has no header buttons");
  }
}

std::vector<Token> SynthParams::header_palette() const {
  std::vector<Token> out;
  for (Token t : leaf_palette) {
    if (admits(Token::kHeader, t)) out.push_back(t);
  }
  return out;
}

SynthParams SynthParams::desk() {
  SynthParams p;
  p.max_rows = 3;
  p.header_buttons_min = 1;
  p.header_buttons_max = 4;
  return p;
}

GuiAst synthesize_ast(const SynthParams& params) {
  params.validate();
  Rng rng(params.seed);
  GuiAst ast;

  const auto header_palette = params.header_palette();
  const auto buttons = rng.uniform_int(params.header_buttons_min, params.header_buttons_max);
  if (buttons > 0) {
    GuiNode header{Token::kHeader, {}};
    for (std::int64_t i = 0; i < buttons; ++i) {
      header.children.push_back({header_palette[rng.uniform_index(header_palette.size())], {}});
    }
    ast.children.push_back(std::move(header));
  }

  const auto rows = rng.uniform_int(1, params.max_rows);
  for (std::int64_t r = 0; r < rows; ++r) {
    GuiNode row{Token::kRow, {}};
    const Token kind = params.column_kinds[rng.uniform_index(params.column_kinds.size())];
    for (int c = 0; c < column_count(kind); ++c) {
      const Token leaf = params.leaf_palette[rng.uniform_index(params.leaf_palette.size())];
      row.children.push_back({kind, {{leaf, {}}}});
    }
    ast.children.push_back(std::move(row));
  }
  return ast;
}

boost::multiprecision::cpp_int count_synthesizable(const SynthParams& params) {
  using boost::multiprecision::cpp_int;
  params.validate();

  // Distinct decision paths always produce distinct trees, so the count is a
  // sum over the discrete choices of products of palette sizes.
  const cpp_int header_choices = params.header_palette().size();
  cpp_int headers = 0;
  for (int n = params.header_buttons_min; n <= params.header_buttons_max; ++n) {
    headers += boost::multiprecision::pow(header_choices, static_cast<unsigned>(n));
  }

  const cpp_int leaves = params.leaf_palette.size();
  cpp_int per_row = 0;
  for (Token kind : params.column_kinds) {
    per_row += boost::multiprecision::pow(leaves, static_cast<unsigned>(column_count(kind)));
  }
  cpp_int bodies = 0;
  for (int r = 1; r <= params.max_rows; ++r) {
    bodies += boost::multiprecision::pow(per_row, static_cast<unsigned>(r));
  }
  return headers * bodies;
}

}  // namespace guicode
