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

#include "guicode/decode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace guicode {

using nn::Mode;
using nn::Tape;
using nn::Var;

ControlTokens ControlTokens::of(const Vocabulary& vocab) {
  return {vocab.index_of(Token::kPad), vocab.index_of(Token::kStart), vocab.index_of(Token::kEnd)};
}

std::vector<std::size_t> context_for(std::span<const std::size_t> prefix, std::size_t window,
                                     const ControlTokens& ctl) {
  if (window == 0) throw std::invalid_argument("context_for: window must be positive");
  std::vector<std::size_t> ctx(window, ctl.pad);
  // Virtual sequence START . prefix, right-aligned in the window.
  const std::size_t len = prefix.size() + 1;
  const std::size_t take = std::min(window, len);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t pos = len - take + i;  // index into the virtual sequence
    ctx[window - take + i] = pos == 0 ? ctl.start : prefix[pos - 1];
  }
  return ctx;
}

std::vector<std::size_t> sample_greedy(const NextDistribution& next, std::size_t window,
                                       const ControlTokens& ctl, std::size_t max_len) {
  if (max_len == 0) throw std::invalid_argument("sample_greedy: max_len must be >= 1");
  std::vector<std::size_t> out;
  while (out.size() < max_len) {
    const std::vector<double> y = next(context_for(out, window, ctl));
    if (y.empty()) throw std::invalid_argument("sample_greedy: empty distribution");
    const auto best = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    out.push_back(best);
    if (best == ctl.end) break;
  }
  return out;
}

BeamHypothesis sample_beam(const NextDistribution& next, std::size_t window, const ControlTokens& ctl,
                           std::size_t width, std::size_t max_len) {
  if (width == 0) throw std::invalid_argument("sample_beam: width must be >= 1");
  if (max_len == 0) throw std::invalid_argument("sample_beam: max_len must be >= 1");

  struct Candidate {
    double log_prob;
    std::size_t parent;
    std::size_t token;
  };

  std::vector<BeamHypothesis> live{BeamHypothesis{}};
  std::vector<BeamHypothesis> pool;
  for (std::size_t len = 0; len < max_len && !live.empty(); ++len) {
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < live.size(); ++i) {
      const std::vector<double> y = next(context_for(live[i].tokens, window, ctl));
      for (std::size_t v = 0; v < y.size(); ++v) cands.push_back({live[i].log_prob + std::log(y[v]), i, v});
    }
    // Enumeration order is (parent, token), so a stable sort keeps the tie rule.
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.log_prob > b.log_prob; });
    cands.resize(std::min(cands.size(), width));

    std::vector<BeamHypothesis> grown;
    for (const Candidate& c : cands) {
      BeamHypothesis h;
      h.tokens = live[c.parent].tokens;
      h.tokens.push_back(c.token);
      h.log_prob = c.log_prob;
      h.finished = c.token == ctl.end || h.tokens.size() == max_len;
      if (c.token == ctl.end) {
        pool.push_back(std::move(h));
      } else {
        grown.push_back(std::move(h));
      }
    }
    live = std::move(grown);
  }

  const BeamHypothesis* best = nullptr;
  for (const auto* set : {&pool, &live}) {
    for (const auto& h : *set) {
      if (best == nullptr || h.log_prob > best->log_prob) best = &h;
    }
  }
  return *best;
}

double sequence_log_prob(const NextDistribution& next, std::span<const std::size_t> tokens,
                         std::size_t window, const ControlTokens& ctl) {
  double total = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::vector<double> y = next(context_for(tokens.first(i), window, ctl));
    total += std::log(y.at(tokens[i]));
  }
  return total;
}

template <typename T>
Predictor<T>::Predictor(Model<T>& model, const GuiImage& image) : model_(&model) {
  Tape<T> tape(false);
  Rng unused(0);
  const Var p = model.vision_encode(tape, model.image_input(tape, image), Mode::kInfer, unused);
  p_ = tape.value(p);
}

template <typename T>
std::vector<double> Predictor<T>::operator()(std::span<const std::size_t> context) const {
  Tape<T> tape(false);
  Rng unused(0);
  const Var p = tape.leaf(p_);
  const Var y = model_->predict(tape, p, context, Mode::kInfer, unused);
  const auto& v = tape.value(y).values();
  return std::vector<double>(v.begin(), v.end());
}

template <typename T>
NextDistribution Predictor<T>::as_function() const {
  return [self = *this](std::span<const std::size_t> context) { return self(context); };
}

template <typename T>
std::vector<std::size_t> sample_greedy(Model<T>& model, const GuiImage& image, std::size_t max_len) {
  const Predictor<T> predictor(model, image);
  return sample_greedy(predictor.as_function(), static_cast<std::size_t>(model.config().window),
                       ControlTokens::of(Vocabulary::standard()), max_len);
}

template <typename T>
BeamHypothesis sample_beam(Model<T>& model, const GuiImage& image, std::size_t width, std::size_t max_len) {
  const Predictor<T> predictor(model, image);
  return sample_beam(predictor.as_function(), static_cast<std::size_t>(model.config().window),
                     ControlTokens::of(Vocabulary::standard()), width, max_len);
}

std::vector<Token> to_tokens(std::span<const std::size_t> indices, const Vocabulary& vocab) {
  std::vector<Token> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(vocab.at(i));
  if (!out.empty() && out.back() == Token::kEnd) out.pop_back();
  return out;
}

template class Predictor<float>;
template class Predictor<double>;
template std::vector<std::size_t> sample_greedy<float>(Model<float>&, const GuiImage&, std::size_t);
template std::vector<std::size_t> sample_greedy<double>(Model<double>&, const GuiImage&, std::size_t);
template BeamHypothesis sample_beam<float>(Model<float>&, const GuiImage&, std::size_t, std::size_t);
template BeamHypothesis sample_beam<double>(Model<double>&, const GuiImage&, std::size_t, std::size_t);

}  // namespace guicode
