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

#include "guicode/tape.hpp"

#include <stdexcept>

namespace guicode::nn {

template <typename T>
Parameter<T>& ParamSet<T>::add(std::string name, Shape shape) {
  if (contains(name)) throw std::invalid_argument("duplicate parameter " + name);
  Tensor<T> value(shape);
  Tensor<T> grad(std::move(shape));
  params_.push_back({std::move(name), std::move(value), std::move(grad)});
  return params_.back();
}

template <typename T>
Parameter<T>& ParamSet<T>::get(std::string_view name) {
  for (auto& p : params_) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("no parameter " + std::string(name));
}

template <typename T>
const Parameter<T>& ParamSet<T>::get(std::string_view name) const {
  return const_cast<ParamSet*>(this)->get(name);
}

template <typename T>
bool ParamSet<T>::contains(std::string_view name) const {
  for (const auto& p : params_) {
    if (p.name == name) return true;
  }
  return false;
}

template <typename T>
std::size_t ParamSet<T>::element_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

template <typename T>
void ParamSet<T>::zero_grad() {
  for (auto& p : params_) p.grad.fill(T{0});
}

template <typename T>
Var Tape<T>::leaf(Tensor<T> value, bool requires_grad) {
  nodes_.push_back({std::move(value), {}, {}, nullptr, requires_grad && recording_});
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename T>
Var Tape<T>::param(Parameter<T>& p) {
  if (auto it = param_vars_.find(&p); it != param_vars_.end()) return it->second;
  nodes_.push_back({p.value, {}, {}, &p, recording_});
  const Var v{static_cast<std::uint32_t>(nodes_.size() - 1)};
  param_vars_.emplace(&p, v);
  return v;
}

template <typename T>
Var Tape<T>::push(Tensor<T> value, bool requires_grad, Backward backward) {
  const bool keep = recording_ && requires_grad;
  nodes_.push_back({std::move(value), {}, keep ? std::move(backward) : Backward{}, nullptr, keep});
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename T>
Tensor<T>& Tape<T>::grad(Var v) {
  Node& n = nodes_.at(v.id);
  if (n.grad.empty() && !n.value.empty()) n.grad = Tensor<T>(n.value.shape());
  return n.grad;
}

template <typename T>
void Tape<T>::backward(Var root, T seed) {
  if (!recording_) throw std::logic_error("backward on a non-recording tape");
  if (value(root).size() != 1) shape_mismatch("backward", value(root).shape(), "a scalar root");
  grad(root)[0] += seed;
  for (std::size_t i = root.id + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (n.backward && !n.grad.empty()) n.backward(*this, Var{static_cast<std::uint32_t>(i)});
  }
  for (auto& n : nodes_) {
    if (n.param && !n.grad.empty()) n.param->grad += n.grad;
  }
}

template class ParamSet<float>;
template class ParamSet<double>;
template class Tape<float>;
template class Tape<double>;

}  // namespace guicode::nn
