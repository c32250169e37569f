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

#include <vector>

#include "guicode/tape.hpp"

namespace guicode::nn {

// Elementwise clamp into [lo, hi]. Requires lo < hi.
template <typename T>
void clip_gradients(Tensor<T>& grad, T lo = T{-1}, T hi = T{1});
template <typename T>
void clip_gradients(ParamSet<T>& params, T lo = T{-1}, T hi = T{1});

struct RmsPropOptions {
  double learning_rate = 1e-4;
  double rho = 0.9;
  double epsilon = 1e-8;
};

// acc <- rho * acc + (1 - rho) * g^2;  param <- param - lr * g / sqrt(acc + eps)
template <typename T>
class RmsProp {
 public:
  explicit RmsProp(RmsPropOptions options = {}) : options_(options) {}

  const RmsPropOptions& options() const { return options_; }
  void set_learning_rate(double lr) { options_.learning_rate = lr; }

  // Single tensor update with an explicit accumulator of the same shape.
  static void update(Tensor<T>& param, const Tensor<T>& grad, Tensor<T>& accumulator,
                     const RmsPropOptions& options);

  // Updates every parameter from its .grad; accumulators are created lazily.
  void step(ParamSet<T>& params);

  const std::vector<Tensor<T>>& accumulators() const { return accumulators_; }

 private:
  RmsPropOptions options_;
  std::vector<Tensor<T>> accumulators_;
};

extern template class RmsProp<float>;
extern template class RmsProp<double>;

}  // namespace guicode::nn
