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

#include "guicode/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace guicode::nn {
namespace {

double evaluate(const LossFn& loss) {
  Tape<double> tape(false);
  const Var root = loss(tape);
  return tape.value(root)[0];
}

}  // namespace

GradCheckReport grad_check(ParamSet<double>& params, const LossFn& loss, double step) {
  params.zero_grad();
  {
    Tape<double> tape;
    tape.backward(loss(tape));
  }
  std::vector<Tensor<double>> analytic;
  for (const auto& p : params.all()) {
    if (!p.grad.all_finite()) throw NonFiniteGradient("non-finite gradient in " + p.name);
    analytic.push_back(p.grad);
  }

  GradCheckReport report;
  std::size_t pi = 0;
  for (auto& p : params.all()) {
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double saved = p.value[i];
      p.value[i] = saved + step;
      const double up = evaluate(loss);
      p.value[i] = saved - step;
      const double down = evaluate(loss);
      p.value[i] = saved;

      const double numeric = (up - down) / (2.0 * step);
      const double a = analytic[pi][i];
      if (!std::isfinite(numeric)) throw NonFiniteGradient("non-finite numeric gradient in " + p.name);
      const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-8});
      ++report.checked;
      if (rel > report.max_rel_error || report.worst_param.empty()) {
        report.max_rel_error = std::max(rel, report.max_rel_error);
        if (rel >= report.max_rel_error) {
          report.worst_param = p.name;
          report.worst_index = i;
          report.worst_analytic = a;
          report.worst_numeric = numeric;
        }
      }
    }
    ++pi;
  }
  return report;
}

}  // namespace guicode::nn
