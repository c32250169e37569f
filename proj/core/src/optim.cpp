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

#include "guicode/optim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace guicode::nn {

template <typename T>
void clip_gradients(Tensor<T>& grad, T lo, T hi) {
  if (!(lo < hi)) throw std::invalid_argument("clip_gradients: lo must be below hi");
  for (auto& g : grad.values()) g = std::clamp(g, lo, hi);
}

template <typename T>
void clip_gradients(ParamSet<T>& params, T lo, T hi) {
  for (auto& p : params.all()) clip_gradients(p.grad, lo, hi);
}

template <typename T>
void RmsProp<T>::update(Tensor<T>& param, const Tensor<T>& grad, Tensor<T>& accumulator,
                        const RmsPropOptions& options) {
  if (grad.shape() != param.shape()) shape_mismatch("rmsprop grad", grad.shape(), shape_string(param.shape()));
  if (accumulator.shape() != param.shape()) {
    shape_mismatch("rmsprop accumulator", accumulator.shape(), shape_string(param.shape()));
  }
  const T rho = static_cast<T>(options.rho);
  const T lr = static_cast<T>(options.learning_rate);
  const T eps = static_cast<T>(options.epsilon);
  for (std::size_t i = 0; i < param.size(); ++i) {
    const T g = grad[i];
    accumulator[i] = rho * accumulator[i] + (T{1} - rho) * g * g;
    const T denom = std::sqrt(accumulator[i] + eps);
    // g == 0 with acc == 0 and eps == 0 would divide 0 by 0.
    if (g != T{0}) param[i] -= lr * g / denom;
  }
}

template <typename T>
void RmsProp<T>::step(ParamSet<T>& params) {
  if (accumulators_.size() != params.size()) {
    accumulators_.clear();
    for (const auto& p : params.all()) accumulators_.emplace_back(p.value.shape());
  }
  std::size_t i = 0;
  for (auto& p : params.all()) update(p.value, p.grad, accumulators_[i++], options_);
}

template void clip_gradients<float>(Tensor<float>&, float, float);
template void clip_gradients<double>(Tensor<double>&, double, double);
template void clip_gradients<float>(ParamSet<float>&, float, float);
template void clip_gradients<double>(ParamSet<double>&, double, double);
template class RmsProp<float>;
template class RmsProp<double>;

}  // namespace guicode::nn
