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

// Reverse-mode differentiation. Every op appends one node holding its value
// and a closure that pushes the node's gradient to its inputs; backward()
// runs those closures in exact reverse order of recording.

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "guicode/tensor.hpp"

namespace guicode::nn {

struct Var {
  std::uint32_t id = UINT32_MAX;
  bool valid() const { return id != UINT32_MAX; }
};

template <typename T>
struct Parameter {
  std::string name;
  Tensor<T> value;
  Tensor<T> grad;
};

// Named learnable tensors in a fixed declaration order. References returned
// by add() stay valid for the lifetime of the set.
template <typename T>
class ParamSet {
 public:
  Parameter<T>& add(std::string name, Shape shape);
  Parameter<T>& get(std::string_view name);
  const Parameter<T>& get(std::string_view name) const;
  bool contains(std::string_view name) const;

  std::deque<Parameter<T>>& all() { return params_; }
  const std::deque<Parameter<T>>& all() const { return params_; }
  std::size_t size() const { return params_.size(); }
  std::size_t element_count() const;

  void zero_grad();

 private:
  std::deque<Parameter<T>> params_;
};

template <typename T>
class Tape {
 public:
  using Backward = std::function<void(Tape&, Var self)>;

  // With record_gradients false no closures are kept and backward() is
  // unavailable; used for inference.
  explicit Tape(bool record_gradients = true) : recording_(record_gradients) {}

  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const { return recording_; }

  Var leaf(Tensor<T> value, bool requires_grad = false);
  // One node per parameter per tape; repeated calls return the same Var.
  Var param(Parameter<T>& p);
  Var push(Tensor<T> value, bool requires_grad, Backward backward);

  const Tensor<T>& value(Var v) const { return nodes_.at(v.id).value; }
  bool requires_grad(Var v) const { return nodes_.at(v.id).requires_grad; }
  // Gradient buffer, zero-filled on first access.
  Tensor<T>& grad(Var v);
  bool has_grad(Var v) const { return !nodes_.at(v.id).grad.empty(); }

  // Seeds d(root)/d(root) = seed for a single-element root, propagates, then
  // adds every parameter node's gradient into Parameter::grad.
  void backward(Var root, T seed = T{1});

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor<T> value;
    Tensor<T> grad;
    Backward backward;
    Parameter<T>* param = nullptr;
    bool requires_grad = false;
  };

  bool recording_;
  std::vector<Node> nodes_;
  std::unordered_map<const Parameter<T>*, Var> param_vars_;
};

extern template class ParamSet<float>;
extern template class ParamSet<double>;
extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace guicode::nn
