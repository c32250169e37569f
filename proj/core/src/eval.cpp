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

#include "guicode/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "guicode/decode.hpp"

namespace guicode {

double mean_error(std::span<const double> per_file) {
  if (per_file.empty()) throw EvalError(EvalError::Kind::kInvalidInput, "mean_error: no files");
  return std::accumulate(per_file.begin(), per_file.end(), 0.0) / static_cast<double>(per_file.size());
}

RocCurve roc_micro_average(std::span<const std::vector<double>> distributions,
                           std::span<const std::size_t> targets) {
  if (distributions.empty() || distributions.size() != targets.size()) {
    throw EvalError(EvalError::Kind::kInvalidInput, "roc_micro_average: need one target per distribution");
  }
  struct Pair {
    double score;
    bool positive;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < distributions.size(); ++i) {
    const auto& d = distributions[i];
    if (targets[i] >= d.size()) throw EvalError(EvalError::Kind::kInvalidInput, "roc_micro_average: target out of range");
    for (std::size_t c = 0; c < d.size(); ++c) {
      if (!std::isfinite(d[c])) throw EvalError(EvalError::Kind::kInvalidInput, "roc_micro_average: non-finite score");
      pairs.push_back({d[c], c == targets[i]});
    }
  }
  const auto positives = static_cast<double>(std::count_if(pairs.begin(), pairs.end(), [](const Pair& p) { return p.positive; }));
  const double negatives = static_cast<double>(pairs.size()) - positives;
  if (positives == 0 || negatives == 0) {
    throw EvalError(EvalError::Kind::kDegenerateLabels, "roc_micro_average: labels contain a single class");
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.score > b.score; });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  double tp = 0, fp = 0;
  for (std::size_t i = 0; i < pairs.size();) {
    const double s = pairs[i].score;
    for (; i < pairs.size() && pairs[i].score == s; ++i) (pairs[i].positive ? tp : fp) += 1;
    const RocPoint pt{s, fp / negatives, tp / positives};
    const RocPoint& prev = curve.points.back();
    curve.area += (pt.fpr - prev.fpr) * (pt.tpr + prev.tpr) / 2.0;
    curve.points.push_back(pt);
  }
  return curve;
}

template <typename T>
TeacherForced teacher_forced(Model<T>& model, const Dataset& data) {
  TeacherForced out;
  out.distributions.resize(data.samples.size());
  out.targets.resize(data.samples.size());
  // Samples of one file are contiguous, so one Predictor per run of an image.
  std::size_t i = 0;
  while (i < data.samples.size()) {
    const std::size_t image = data.samples[i].image;
    const Predictor<T> predictor(model, data.images.at(image));
    for (; i < data.samples.size() && data.samples[i].image == image; ++i) {
      out.distributions[i] = predictor(data.samples[i].context);
      out.targets[i] = data.samples[i].target;
    }
  }
  return out;
}

template TeacherForced teacher_forced<float>(Model<float>&, const Dataset&);
template TeacherForced teacher_forced<double>(Model<double>&, const Dataset&);

}  // namespace guicode
