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
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "guicode/model.hpp"
#include "guicode/train.hpp"

namespace guicode {

class EvalError : public std::invalid_argument {
 public:
  enum class Kind { kEmptyExpected, kDegenerateLabels, kInvalidInput };
  EvalError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// (mismatches over the common prefix + |len(generated) - len(expected)|)
// / len(expected).
template <typename S>
double token_error(std::span<const S> generated, std::span<const S> expected) {
  if (expected.empty()) throw EvalError(EvalError::Kind::kEmptyExpected, "token_error: empty expected sequence");
  const std::size_t common = std::min(generated.size(), expected.size());
  std::size_t errors = 0;
  for (std::size_t i = 0; i < common; ++i) errors += generated[i] == expected[i] ? 0 : 1;
  errors += generated.size() > expected.size() ? generated.size() - expected.size()
                                               : expected.size() - generated.size();
  return static_cast<double>(errors) / static_cast<double>(expected.size());
}

template <typename S>
double token_error(const std::vector<S>& generated, const std::vector<S>& expected) {
  return token_error(std::span<const S>(generated), std::span<const S>(expected));
}

// Mean of per-file errors.
double mean_error(std::span<const double> per_file);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0, 0) at threshold +inf to (1, 1)
  double area = 0.0;
};

// Pools every (class score, class == target) pair and sweeps the threshold
// over the distinct scores; tied scores move together. Trapezoidal area.
RocCurve roc_micro_average(std::span<const std::vector<double>> distributions,
                           std::span<const std::size_t> targets);

// Per-sample distributions with ground-truth contexts, in sample order.
struct TeacherForced {
  std::vector<std::vector<double>> distributions;
  std::vector<std::size_t> targets;
};

template <typename T>
TeacherForced teacher_forced(Model<T>& model, const Dataset& data);

}  // namespace guicode
