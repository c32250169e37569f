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
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "guicode/dsl.hpp"

namespace guicode {

// Decision sets of the stochastic GUI generator. Generation draws, each
// uniformly over its allowed set and in this order: the header button count,
// each header button kind, the row count, and per row the column kind and
// then one leaf per cell.
struct SynthParams {
  int max_rows = 3;
  std::vector<Token> column_kinds = {Token::kSingle, Token::kDouble, Token::kQuadruple};
  // Header buttons drawn; 0 means no header node at all.
  int header_buttons_min = 1;
  int header_buttons_max = 4;
  // Cell contents. Header buttons draw from the btn-active/btn-inactive subset.
  std::vector<Token> leaf_palette = {Token::kBtnActive, Token::kBtnInactive, Token::kBtnGreen,
                                     Token::kBtnOrange, Token::kBtnRed,      Token::kText,
                                     Token::kSmallTitle};
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on empty or inconsistent decision sets.
  void validate() const;
  std::vector<Token> header_palette() const;

  // Small decision sets used for the 64x64 datasets.
  static SynthParams desk();
};

GuiAst synthesize_ast(const SynthParams& params);

// Exact number of distinct trees synthesize_ast can emit, in closed form.
boost::multiprecision::cpp_int count_synthesizable(const SynthParams& params);

}  // namespace guicode
