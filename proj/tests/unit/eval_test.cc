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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "guicode/eval.hpp"
#include "guicode/render.hpp"
#include "guicode/synth.hpp"

namespace guicode {
namespace {

// Probability that a random positive outscores a random negative, ties
// counted half. Equal to the trapezoidal ROC area.
double pairwise_auc(const std::vector<std::vector<double>>& d, const std::vector<std::size_t>& targets) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t c = 0; c < d[i].size(); ++c) (c == targets[i] ? pos : neg).push_back(d[i][c]);
  }
  double wins = 0;
  for (double p : pos) {
    for (double n : neg) wins += p > n ? 1.0 : p == n ? 0.5 : 0.0;
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

TEST(TokenError, Examples) {
  using V = std::vector<int>;
  EXPECT_EQ(token_error(V{1, 2, 3}, V{1, 2, 3}), 0.0);
  EXPECT_EQ(token_error(V{1, 9, 3}, V{1, 2, 3}), 1.0 / 3.0);
  EXPECT_EQ(token_error(V{}, V{1, 2, 3, 4}), 1.0);
  EXPECT_EQ(token_error(V{1, 2}, V{1, 2, 3, 4}), 0.5);
  EXPECT_EQ(token_error(V{1, 2, 3, 4, 5, 6}, V{1, 2, 3}), 1.0);
  EXPECT_EQ(token_error(V{2, 1}, V{1}), 2.0);
  try {
    token_error(V{1}, V{});
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalError::Kind::kEmptyExpected);
  }
}

TEST(TokenError, Properties) {
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> a(rng.uniform_index(12)), b(1 + rng.uniform_index(12));
    for (auto& v : a) v = static_cast<int>(rng.uniform_index(3));
    for (auto& v : b) v = static_cast<int>(rng.uniform_index(3));
    const double e = token_error(a, b);
    EXPECT_GE(e, 0.0);
    EXPECT_EQ(token_error(b, b), 0.0);
    // Never worse than emitting nothing plus one error per extra token.
    const double bound = std::max(a.size(), b.size()) / static_cast<double>(b.size());
    EXPECT_LE(e, bound);
    // Appending a wrong token to a perfect answer costs exactly 1/|b|.
    auto longer = b;
    longer.push_back(7);
    EXPECT_DOUBLE_EQ(token_error(longer, b), 1.0 / static_cast<double>(b.size()));
  }
}

TEST(TokenError, WorksOnDslTokens) {
  const std::vector<Token> want = tokenize("header { btn-active }");
  const std::vector<Token> got = tokenize("header { btn-inactive }");
  EXPECT_EQ(token_error(got, want), 0.25);
}

TEST(MeanError, AveragesFiles) {
  const std::vector<double> e = {0.0, 0.5, 1.0, 0.1};
  EXPECT_DOUBLE_EQ(mean_error(e), 0.4);
  EXPECT_THROW(mean_error({}), EvalError);
}

TEST(Roc, PerfectSeparation) {
  const std::vector<std::vector<double>> d = {{0.9, 0.1, 0.0}, {0.2, 0.7, 0.1}, {0.05, 0.05, 0.9}};
  const std::vector<std::size_t> t = {0, 1, 2};
  const RocCurve roc = roc_micro_average(d, t);
  EXPECT_DOUBLE_EQ(roc.area, 1.0);
  ASSERT_FALSE(roc.points.empty());
  EXPECT_EQ(roc.points.front().fpr, 0.0);
  EXPECT_EQ(roc.points.front().tpr, 0.0);
  EXPECT_TRUE(std::isinf(roc.points.front().threshold));
  EXPECT_EQ(roc.points.back().fpr, 1.0);
  EXPECT_EQ(roc.points.back().tpr, 1.0);
}

TEST(Roc, ConstantScoresGiveChance) {
  const std::vector<std::vector<double>> d(5, std::vector<double>(4, 0.25));
  const std::vector<std::size_t> t = {0, 1, 2, 3, 0};
  const RocCurve roc = roc_micro_average(d, t);
  EXPECT_DOUBLE_EQ(roc.area, 0.5);
  EXPECT_EQ(roc.points.size(), 2u);
}

TEST(Roc, AreaMatchesPairwiseCount) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(20), v = 2 + rng.uniform_index(6);
    std::vector<std::vector<double>> d(n, std::vector<double>(v));
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Quantized scores to force ties.
      for (auto& x : d[i]) x = static_cast<double>(rng.uniform_index(6)) / 5.0;
      t[i] = rng.uniform_index(v);
    }
    const RocCurve roc = roc_micro_average(d, t);
    EXPECT_NEAR(roc.area, pairwise_auc(d, t), 1e-12);
    for (std::size_t k = 1; k < roc.points.size(); ++k) {
      EXPECT_GE(roc.points[k].fpr, roc.points[k - 1].fpr);
      EXPECT_GE(roc.points[k].tpr, roc.points[k - 1].tpr);
      EXPECT_LT(roc.points[k].threshold, roc.points[k - 1].threshold);
    }
  }
}

TEST(Roc, InvalidInputs) {
  const std::vector<std::vector<double>> d = {{0.5, 0.5}};
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const EvalError& e) {
      return e.kind();
    }
    return EvalError::Kind::kInvalidInput;
  };
  const std::vector<std::size_t> none;
  EXPECT_THROW(roc_micro_average(d, none), EvalError);
  const std::vector<std::size_t> out = {2};
  EXPECT_THROW(roc_micro_average(d, out), EvalError);
  const std::vector<std::vector<double>> single = {{1.0}};
  const std::vector<std::size_t> zero = {0};
  EXPECT_EQ(kind_of([&] { roc_micro_average(single, zero); }), EvalError::Kind::kDegenerateLabels);
  const std::vector<std::vector<double>> bad = {{std::numeric_limits<double>::quiet_NaN(), 0.5}};
  EXPECT_THROW(roc_micro_average(bad, zero), EvalError);
}

TEST(TeacherForced, OneDistributionPerSample) {
  Model<float> model(ModelConfig::micro());
  model.initialize(4);
  SynthParams sp = SynthParams::desk();
  std::vector<GuiImage> images;
  std::vector<std::vector<Token>> files;
  for (std::uint64_t i = 0; i < 2; ++i) {
    sp.seed = i;
    const GuiAst ast = synthesize_ast(sp);
    images.push_back(resize_normalize(rasterize_raster(ast, 64, 64, theme_by_name("default")), 16, 16));
    files.push_back(flatten(ast));
  }
  const Dataset data = make_dataset(std::move(images), files, 8);
  const TeacherForced tf = teacher_forced(model, data);
  ASSERT_EQ(tf.distributions.size(), data.samples.size());
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    EXPECT_EQ(tf.targets[i], data.samples[i].target);
    double total = 0;
    for (double v : tf.distributions[i]) total += v;
    EXPECT_NEAR(total, 1.0, 1e-5);
  }
  const RocCurve roc = roc_micro_average(tf.distributions, tf.targets);
  EXPECT_GE(roc.area, 0.0);
  EXPECT_LE(roc.area, 1.0);
}

}  // namespace
}  // namespace guicode
