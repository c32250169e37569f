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

// Image-to-token model: a convolutional vision encoder, an LSTM language
// encoder over the token context, and an LSTM decoder over the concatenated
// (q_t, p) features followed by a softmax over the vocabulary.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guicode/image.hpp"
#include "guicode/ops.hpp"
#include "guicode/tape.hpp"

namespace guicode {

struct DropoutRates {
  double pool = 0.25;  // after each max-pool
  double fc = 0.30;    // after each fully connected layer
  double lstm = 0.10;  // non-recurrent LSTM inputs and the decoder output

  bool operator==(const DropoutRates&) const = default;
};

struct ModelConfig {
  int image_size = 256;
  // One max-pool after every second convolution.
  std::vector<int> conv_widths = {32, 32, 64, 64, 128, 128};
  int fc_width = 1024;
  int fc_layers = 2;
  int language_layers = 2;
  int language_cells = 128;
  int decoder_layers = 2;
  int decoder_cells = 512;
  int vocab_size = 18;
  int window = 48;
  DropoutRates dropout;

  static ModelConfig paper();
  static ModelConfig desk();
  // 16x16 images, window 8, 4-cell LSTMs. Small enough for exhaustive
  // finite-difference checks.
  static ModelConfig micro();

  // Throws std::invalid_argument.
  void validate() const;
  int pooled_size() const;
  std::size_t flat_features() const;

  bool operator==(const ModelConfig&) const = default;
};

// Sum of all parameter tensor sizes, by shape arithmetic.
std::size_t param_count(const ModelConfig& config);

template <typename T>
class Model {
 public:
  explicit Model(ModelConfig config);

  // Uniform +-sqrt(6 / (fan_in + fan_out)) weights, zero biases except the
  // forget-gate bias, which starts at 1.
  void initialize(std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  nn::ParamSet<T>& params() { return params_; }
  const nn::ParamSet<T>& params() const { return params_; }

  // Leaf holding 1 - pixel, shape [size, size, 3].
  nn::Var image_input(nn::Tape<T>& tape, const GuiImage& image, bool requires_grad = false) const;

  // p: feature vector of length fc_width.
  nn::Var vision_encode(nn::Tape<T>& tape, nn::Var image, nn::Mode mode, Rng& rng);
  // q_1..q_T: top-layer outputs of the language LSTM stack, one per context
  // position, from zero initial state.
  std::vector<nn::Var> language_encode(nn::Tape<T>& tape, std::span<const std::size_t> context,
                                       nn::Mode mode, Rng& rng);
  // Next-token distribution from r_t = concat(q_t, p) fed through the
  // decoder stack; only the final step reaches the softmax.
  nn::Var decode(nn::Tape<T>& tape, nn::Var p, std::span<const nn::Var> q, nn::Mode mode, Rng& rng);

  // language_encode + decode.
  nn::Var predict(nn::Tape<T>& tape, nn::Var p, std::span<const std::size_t> context, nn::Mode mode,
                  Rng& rng);

 private:
  struct Conv {
    std::size_t kernel, bias;
  };
  struct LstmLayer {
    std::size_t w[12];  // W_ix W_iy W_fx W_fy W_ox W_oy W_cx W_cy b_i b_f b_o b_c
  };

  nn::Var var(nn::Tape<T>& tape, std::size_t index);
  nn::LstmWeights lstm_weights(nn::Tape<T>& tape, const LstmLayer& layer);
  void add_lstm(std::vector<LstmLayer>& stack, const std::string& prefix, int layers, int input, int cells);

  ModelConfig config_;
  nn::ParamSet<T> params_;
  std::vector<Conv> conv_;
  std::vector<Conv> fc_;
  std::vector<LstmLayer> language_;
  std::vector<LstmLayer> decoder_;
  Conv output_{};
};

// Multiclass log loss of one prediction: -log y[target].
template <typename T>
nn::Var token_loss(nn::Tape<T>& tape, nn::Var probs, std::size_t target) {
  return nn::cross_entropy(tape, probs, target);
}

extern template class Model<float>;
extern template class Model<double>;

}  // namespace guicode
