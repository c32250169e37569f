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

#include "guicode/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace guicode {

using nn::Mode;
using nn::Tape;
using nn::Tensor;
using nn::Var;

ModelConfig ModelConfig::paper() { return {}; }

ModelConfig ModelConfig::desk() {
  ModelConfig c;
  c.image_size = 64;
  c.conv_widths = {8, 8, 16, 16, 32, 32};
  c.fc_width = 128;
  c.language_cells = 32;
  c.decoder_cells = 64;
  c.window = 24;
  return c;
}

ModelConfig ModelConfig::micro() {
  ModelConfig c;
  c.image_size = 16;
  c.conv_widths = {2, 2, 3, 3, 4, 4};
  c.fc_width = 4;
  c.language_cells = 4;
  c.decoder_cells = 4;
  c.window = 8;
  return c;
}

void ModelConfig::validate() const {
  auto fail = [](const std::string& why) { throw std::invalid_argument("model config: " + why); };
  if (conv_widths.empty() || conv_widths.size() % 2 != 0) fail("conv_widths must hold pairs");
  for (int w : conv_widths) {
    if (w <= 0) fail("conv widths must be positive");
  }
  const int pools = static_cast<int>(conv_widths.size() / 2);
  if (image_size <= 0 || image_size % (1 << pools) != 0) {
    fail("image_size must be divisible by 2^" + std::to_string(pools));
  }
  if (fc_width <= 0 || fc_layers < 1) fail("fc layers");
  if (language_layers < 1 || language_cells <= 0) fail("language LSTM");
  if (decoder_layers < 1 || decoder_cells <= 0) fail("decoder LSTM");
  if (vocab_size < 2) fail("vocab_size");
  if (window < 1) fail("window");
  for (double r : {dropout.pool, dropout.fc, dropout.lstm}) {
    if (!(r >= 0.0 && r < 1.0)) fail("dropout rates must lie in [0, 1)");
  }
}

int ModelConfig::pooled_size() const {
  return image_size >> static_cast<int>(conv_widths.size() / 2);
}

std::size_t ModelConfig::flat_features() const {
  const auto s = static_cast<std::size_t>(pooled_size());
  return s * s * static_cast<std::size_t>(conv_widths.back());
}

std::size_t param_count(const ModelConfig& c) {
  c.validate();
  std::size_t n = 0;
  std::size_t in = 3;
  for (int w : c.conv_widths) {
    const auto out = static_cast<std::size_t>(w);
    n += 9 * in * out + out;
    in = out;
  }
  in = c.flat_features();
  for (int i = 0; i < c.fc_layers; ++i) {
    const auto out = static_cast<std::size_t>(c.fc_width);
    n += in * out + out;
    in = out;
  }
  auto lstm = [](std::size_t input, std::size_t cells) {
    return 4 * (input * cells + cells * cells + cells);
  };
  in = static_cast<std::size_t>(c.vocab_size);
  for (int l = 0; l < c.language_layers; ++l) {
    n += lstm(in, static_cast<std::size_t>(c.language_cells));
    in = static_cast<std::size_t>(c.language_cells);
  }
  in = static_cast<std::size_t>(c.language_cells + c.fc_width);
  for (int l = 0; l < c.decoder_layers; ++l) {
    n += lstm(in, static_cast<std::size_t>(c.decoder_cells));
    in = static_cast<std::size_t>(c.decoder_cells);
  }
  n += in * static_cast<std::size_t>(c.vocab_size) + static_cast<std::size_t>(c.vocab_size);
  return n;
}

namespace {

constexpr const char* kGateNames[12] = {"W_ix", "W_iy", "W_fx", "W_fy", "W_ox", "W_oy",
                                        "W_cx", "W_cy", "b_i",  "b_f",  "b_o",  "b_c"};

}  // namespace

template <typename T>
Model<T>::Model(ModelConfig config) : config_(std::move(config)) {
  config_.validate();
  auto index_of_last = [this] { return params_.size() - 1; };

  std::size_t in = 3;
  for (std::size_t i = 0; i < config_.conv_widths.size(); ++i) {
    const auto out = static_cast<std::size_t>(config_.conv_widths[i]);
    const std::string prefix = "vision.conv" + std::to_string(i);
    Conv c{};
    params_.add(prefix + ".kernel", {3, 3, in, out});
    c.kernel = index_of_last();
    params_.add(prefix + ".bias", {out});
    c.bias = index_of_last();
    conv_.push_back(c);
    in = out;
  }
  in = config_.flat_features();
  for (int i = 0; i < config_.fc_layers; ++i) {
    const auto out = static_cast<std::size_t>(config_.fc_width);
    const std::string prefix = "vision.fc" + std::to_string(i);
    Conv c{};
    params_.add(prefix + ".weight", {in, out});
    c.kernel = index_of_last();
    params_.add(prefix + ".bias", {out});
    c.bias = index_of_last();
    fc_.push_back(c);
    in = out;
  }
  add_lstm(language_, "language", config_.language_layers, config_.vocab_size, config_.language_cells);
  add_lstm(decoder_, "decoder", config_.decoder_layers, config_.language_cells + config_.fc_width,
           config_.decoder_cells);
  const auto dc = static_cast<std::size_t>(config_.decoder_cells);
  const auto vs = static_cast<std::size_t>(config_.vocab_size);
  params_.add("output.weight", {dc, vs});
  output_.kernel = index_of_last();
  params_.add("output.bias", {vs});
  output_.bias = index_of_last();
}

template <typename T>
void Model<T>::add_lstm(std::vector<LstmLayer>& stack, const std::string& prefix, int layers, int input,
                        int cells) {
  auto in = static_cast<std::size_t>(input);
  const auto n = static_cast<std::size_t>(cells);
  for (int l = 0; l < layers; ++l) {
    LstmLayer layer{};
    for (int g = 0; g < 12; ++g) {
      const bool is_bias = g >= 8;
      const bool is_input = !is_bias && g % 2 == 0;
      nn::Shape shape = is_bias ? nn::Shape{n} : is_input ? nn::Shape{in, n} : nn::Shape{n, n};
      params_.add(prefix + "." + std::to_string(l) + "." + kGateNames[g], std::move(shape));
      layer.w[g] = params_.size() - 1;
    }
    stack.push_back(layer);
    in = n;
  }
}

template <typename T>
void Model<T>::initialize(std::uint64_t seed) {
  Rng rng(seed);
  for (auto& p : params_.all()) {
    const auto& s = p.value.shape();
    const bool is_bias = s.size() == 1;
    if (is_bias) {
      const bool forget = p.name.size() >= 3 && p.name.compare(p.name.size() - 3, 3, "b_f") == 0;
      p.value.fill(forget ? T{1} : T{0});
      continue;
    }
    double fan_in, fan_out;
    if (s.size() == 4) {
      fan_in = 9.0 * static_cast<double>(s[2]);
      fan_out = 9.0 * static_cast<double>(s[3]);
    } else {
      fan_in = static_cast<double>(s[0]);
      fan_out = static_cast<double>(s[1]);
    }
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (auto& v : p.value.values()) v = static_cast<T>(rng.uniform(-limit, limit));
  }
}

template <typename T>
Var Model<T>::var(Tape<T>& tape, std::size_t index) {
  return tape.param(params_.all()[index]);
}

template <typename T>
nn::LstmWeights Model<T>::lstm_weights(Tape<T>& tape, const LstmLayer& layer) {
  nn::LstmWeights w;
  Var* slots[12] = {&w.w_ix, &w.w_iy, &w.w_fx, &w.w_fy, &w.w_ox, &w.w_oy,
                    &w.w_cx, &w.w_cy, &w.b_i,  &w.b_f,  &w.b_o,  &w.b_c};
  for (int g = 0; g < 12; ++g) *slots[g] = var(tape, layer.w[g]);
  return w;
}

template <typename T>
Var Model<T>::image_input(Tape<T>& tape, const GuiImage& image, bool requires_grad) const {
  if (image.width != config_.image_size || image.height != config_.image_size) {
    nn::shape_mismatch("image_input",
                       {static_cast<std::size_t>(image.height), static_cast<std::size_t>(image.width), 3},
                       "image_size " + std::to_string(config_.image_size));
  }
  // Ink encoding: the near-white background maps to ~0.
  std::vector<T> values(image.data.size());
  std::transform(image.data.begin(), image.data.end(), values.begin(),
                 [](float v) { return T{1} - static_cast<T>(v); });
  const auto s = static_cast<std::size_t>(config_.image_size);
  return tape.leaf(Tensor<T>({s, s, 3}, std::move(values)), requires_grad);
}

template <typename T>
Var Model<T>::vision_encode(Tape<T>& tape, Var image, Mode mode, Rng& rng) {
  const auto& shape = tape.value(image).shape();
  const auto s = static_cast<std::size_t>(config_.image_size);
  if (shape != nn::Shape{s, s, 3}) nn::shape_mismatch("vision_encode", shape, nn::shape_string({s, s, 3}));
  Var x = image;
  for (std::size_t i = 0; i < conv_.size(); ++i) {
    x = nn::relu(tape, nn::conv2d(tape, x, var(tape, conv_[i].kernel), var(tape, conv_[i].bias)));
    if (i % 2 == 1) {
      x = nn::maxpool2d(tape, x);
      x = nn::dropout(tape, x, config_.dropout.pool, mode, rng);
    }
  }
  x = nn::reshape(tape, x, {tape.value(x).size()});
  for (const auto& fc : fc_) {
    x = nn::relu(tape, nn::dense(tape, x, var(tape, fc.kernel), var(tape, fc.bias)));
    x = nn::dropout(tape, x, config_.dropout.fc, mode, rng);
  }
  return x;
}

template <typename T>
std::vector<Var> Model<T>::language_encode(Tape<T>& tape, std::span<const std::size_t> context, Mode mode,
                                           Rng& rng) {
  const auto vocab = static_cast<std::size_t>(config_.vocab_size);
  const auto cells = static_cast<std::size_t>(config_.language_cells);
  std::vector<nn::LstmWeights> weights;
  for (const auto& layer : language_) weights.push_back(lstm_weights(tape, layer));
  const Var zero = tape.leaf(Tensor<T>({cells}));
  std::vector<nn::LstmState> state(language_.size(), nn::LstmState{zero, zero});

  std::vector<Var> q;
  q.reserve(context.size());
  for (std::size_t token : context) {
    if (token >= vocab) {
      throw nn::TensorError(nn::TensorError::Kind::kShapeMismatch,
                            "language_encode: token index " + std::to_string(token) + " outside vocabulary");
    }
    Tensor<T> one_hot({vocab});
    one_hot[token] = T{1};
    Var x = tape.leaf(std::move(one_hot));
    for (std::size_t l = 0; l < language_.size(); ++l) {
      x = nn::dropout(tape, x, config_.dropout.lstm, mode, rng);
      state[l] = nn::lstm_step(tape, x, state[l], weights[l]);
      x = state[l].h;
    }
    q.push_back(x);
  }
  return q;
}

template <typename T>
Var Model<T>::decode(Tape<T>& tape, Var p, std::span<const Var> q, Mode mode, Rng& rng) {
  if (q.empty()) throw nn::TensorError(nn::TensorError::Kind::kShapeMismatch, "decode: empty context");
  if (tape.value(p).size() != static_cast<std::size_t>(config_.fc_width)) {
    nn::shape_mismatch("decode p", tape.value(p).shape(), "[" + std::to_string(config_.fc_width) + "]");
  }
  const auto cells = static_cast<std::size_t>(config_.decoder_cells);
  std::vector<nn::LstmWeights> weights;
  for (const auto& layer : decoder_) weights.push_back(lstm_weights(tape, layer));
  const Var zero = tape.leaf(Tensor<T>({cells}));
  std::vector<nn::LstmState> state(decoder_.size(), nn::LstmState{zero, zero});

  Var top = zero;
  for (Var qt : q) {
    if (tape.value(qt).size() != static_cast<std::size_t>(config_.language_cells)) {
      nn::shape_mismatch("decode q", tape.value(qt).shape(), "[" + std::to_string(config_.language_cells) + "]");
    }
    const Var parts[2] = {qt, p};
    Var x = nn::concat<T>(tape, parts);
    for (std::size_t l = 0; l < decoder_.size(); ++l) {
      x = nn::dropout(tape, x, config_.dropout.lstm, mode, rng);
      state[l] = nn::lstm_step(tape, x, state[l], weights[l]);
      x = state[l].h;
    }
    top = x;
  }
  top = nn::dropout(tape, top, config_.dropout.lstm, mode, rng);
  const Var logits = nn::dense(tape, top, var(tape, output_.kernel), var(tape, output_.bias));
  return nn::softmax(tape, logits);
}

template <typename T>
Var Model<T>::predict(Tape<T>& tape, Var p, std::span<const std::size_t> context, Mode mode, Rng& rng) {
  const auto q = language_encode(tape, context, mode, rng);
  return decode(tape, p, q, mode, rng);
}

template class Model<float>;
template class Model<double>;

}  // namespace guicode
