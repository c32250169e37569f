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

#include <stdexcept>

#include "guicode/train.hpp"

namespace guicode {

std::vector<TrainingSample> build_windows(std::span<const Token> tokens, std::size_t image,
                                          std::size_t window, const Vocabulary& vocab) {
  if (window < 2) throw std::invalid_argument("build_windows: window must be >= 2");
  std::vector<std::size_t> seq;
  seq.reserve(tokens.size() + 2);
  seq.push_back(vocab.index_of(Token::kStart));
  for (Token t : tokens) seq.push_back(vocab.index_of(t));
  seq.push_back(vocab.index_of(Token::kEnd));
  const std::size_t pad = vocab.index_of(Token::kPad);

  std::vector<TrainingSample> out;
  out.reserve(seq.size() - 1);
  for (std::size_t j = 1; j < seq.size(); ++j) {
    TrainingSample s;
    s.image = image;
    s.target = seq[j];
    const std::size_t take = std::min(window, j);
    s.context.assign(window - take, pad);
    s.context.insert(s.context.end(), seq.begin() + static_cast<std::ptrdiff_t>(j - take),
                     seq.begin() + static_cast<std::ptrdiff_t>(j));
    out.push_back(std::move(s));
  }
  return out;
}

Dataset make_dataset(std::vector<GuiImage> images, std::span<const std::vector<Token>> files,
                     std::size_t window) {
  if (images.size() != files.size()) throw std::invalid_argument("make_dataset: images and files differ in count");
  Dataset d;
  d.images = std::move(images);
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto w = build_windows(files[i], i, window);
    d.samples.insert(d.samples.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
  }
  return d;
}

}  // namespace guicode
