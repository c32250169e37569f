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

// Layer primitives recorded on a Tape. Each op validates shapes, computes its
// forward value and registers an exact backward.

#include <cstddef>
#include <span>

#include "guicode/rng.hpp"
#include "guicode/tape.hpp"

namespace guicode::nn {

enum class Mode { kTrain, kInfer };

// input [H, W, Cin], kernels [3, 3, Cin, Cout], bias [Cout] -> [H, W, Cout].
// Stride 1, zero "same" padding.
template <typename T>
Var conv2d(Tape<T>& tape, Var input, Var kernels, Var bias);

// 2x2 window, stride 2. Gradient goes to the first maximum in row-major
// window order. Throws kOddSpatialExtent for odd H or W.
template <typename T>
Var maxpool2d(Tape<T>& tape, Var input);

// input [n], weights [n, m], bias [m] -> input^T W + b.
template <typename T>
Var dense(Tape<T>& tape, Var input, Var weights, Var bias);

template <typename T>
Var add(Tape<T>& tape, Var a, Var b);
template <typename T>
Var scale(Tape<T>& tape, Var a, T factor);
template <typename T>
Var sum(Tape<T>& tape, Var a);

template <typename T>
Var relu(Tape<T>& tape, Var a);
template <typename T>
Var sigmoid(Tape<T>& tape, Var a);
template <typename T>
Var tanh(Tape<T>& tape, Var a);
// Max-subtracted softmax over all elements.
template <typename T>
Var softmax(Tape<T>& tape, Var a);

// Inverted dropout: survivors scaled by 1 / (1 - rate). Identity in kInfer
// mode and for rate 0. Throws kInvalidRate unless 0 <= rate < 1.
template <typename T>
Var dropout(Tape<T>& tape, Var a, double rate, Mode mode, Rng& rng);

template <typename T>
Var concat(Tape<T>& tape, std::span<const Var> parts);
template <typename T>
Var slice(Tape<T>& tape, Var a, std::size_t offset, std::size_t length);
template <typename T>
Var reshape(Tape<T>& tape, Var a, Shape shape);

// -log(max(probs[target], 1e-12)) as a one-element tensor.
template <typename T>
Var cross_entropy(Tape<T>& tape, Var probs, std::size_t target);

// Gate weights of one LSTM layer. *_x matrices are [input, cells], *_y are
// [cells, cells], biases [cells].
struct LstmWeights {
  Var w_ix, w_iy, w_fx, w_fy, w_ox, w_oy, w_cx, w_cy;
  Var b_i, b_f, b_o, b_c;
};

struct LstmState {
  Var h;
  Var c;
};

// i = sigmoid(x W_ix + h W_iy + b_i), f and o likewise,
// c' = f * c + i * tanh(x W_cx + h W_cy + b_c), h' = o * tanh(c').
template <typename T>
LstmState lstm_step(Tape<T>& tape, Var x, LstmState prev, const LstmWeights& w);

}  // namespace guicode::nn
