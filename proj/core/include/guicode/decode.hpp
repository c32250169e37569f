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

// Greedy and beam decoding over a next-token distribution. The search
// routines only see a callable mapping a fixed-length context to a
// distribution, so they run equally on the full model and on toy models.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "guicode/dsl.hpp"
#include "guicode/image.hpp"
#include "guicode/model.hpp"

namespace guicode {

struct ControlTokens {
  std::size_t pad = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  static ControlTokens of(const Vocabulary& vocab);
};

using NextDistribution = std::function<std::vector<double>(std::span<const std::size_t> context)>;

// The last `window` entries of START . prefix, left-padded with PAD.
std::vector<std::size_t> context_for(std::span<const std::size_t> prefix, std::size_t window,
                                     const ControlTokens& ctl);

inline constexpr std::size_t kDefaultMaxLen = 512;

// Argmax at every step, lowest index on ties. Stops after END or max_len
// tokens; END is included when produced, START never is.
std::vector<std::size_t> sample_greedy(const NextDistribution& next, std::size_t window,
                                       const ControlTokens& ctl, std::size_t max_len = kDefaultMaxLen);

struct BeamHypothesis {
  std::vector<std::size_t> tokens;
  double log_prob = 0.0;
  bool finished = false;
};

// Keeps the k best live hypotheses by cumulative log-probability; those
// ending in END retire to a pool. The answer is the best of pool and live at
// termination. Ties go to the earlier parent, then the lower token index.
BeamHypothesis sample_beam(const NextDistribution& next, std::size_t window, const ControlTokens& ctl,
                           std::size_t width, std::size_t max_len = kDefaultMaxLen);

// Sum of log y[token] replaying `tokens` from the initial context.
double sequence_log_prob(const NextDistribution& next, std::span<const std::size_t> tokens,
                         std::size_t window, const ControlTokens& ctl);

// Runs the vision encoder once and reuses p for every query.
template <typename T>
class Predictor {
 public:
  Predictor(Model<T>& model, const GuiImage& image);

  std::vector<double> operator()(std::span<const std::size_t> context) const;
  // Holds a copy of p; the model must outlive the returned function.
  NextDistribution as_function() const;

 private:
  Model<T>* model_;
  nn::Tensor<T> p_;
};

template <typename T>
std::vector<std::size_t> sample_greedy(Model<T>& model, const GuiImage& image,
                                       std::size_t max_len = kDefaultMaxLen);
template <typename T>
BeamHypothesis sample_beam(Model<T>& model, const GuiImage& image, std::size_t width,
                           std::size_t max_len = kDefaultMaxLen);

// Vocabulary indices back to tokens, dropping a trailing END.
std::vector<Token> to_tokens(std::span<const std::size_t> indices,
                             const Vocabulary& vocab = Vocabulary::standard());

extern template class Predictor<float>;
extern template class Predictor<double>;

}  // namespace guicode
