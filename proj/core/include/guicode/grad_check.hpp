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

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "guicode/tape.hpp"

namespace guicode::nn {

class NonFiniteGradient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t checked = 0;
};

// Records the loss on a fresh tape. Must be a deterministic scalar function
// of the parameter values.
using LossFn = std::function<Var(Tape<double>&)>;

// Compares tape gradients with central differences (step 1e-5) for every
// parameter element. Relative error is |a - n| / max(|a|, |n|, 1e-8).
GradCheckReport grad_check(ParamSet<double>& params, const LossFn& loss, double step = 1e-5);

}  // namespace guicode::nn
