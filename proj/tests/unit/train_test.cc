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
#include <numeric>

#include "guicode/render.hpp"
#include "guicode/synth.hpp"
#include "guicode/train.hpp"

namespace guicode {
namespace {

constexpr std::size_t kStart = 15, kEnd = 16, kPad = 17;

ModelConfig quiet_micro() {
  ModelConfig c = ModelConfig::micro();
  c.dropout = {0.0, 0.0, 0.0};
  return c;
}

Dataset micro_dataset(std::size_t files, std::uint64_t seed) {
  SynthParams sp = SynthParams::desk();
  sp.max_rows = 1;
  std::vector<GuiImage> images;
  std::vector<std::vector<Token>> tokens;
  for (std::size_t i = 0; i < files; ++i) {
    sp.seed = derive_seed(seed, {i});
    const GuiAst ast = synthesize_ast(sp);
    images.push_back(resize_normalize(rasterize_raster(ast, 64, 64, theme_by_name("default")), 16, 16));
    tokens.push_back(flatten(ast));
  }
  return make_dataset(std::move(images), tokens, 8);
}

TEST(Windows, WorkedExample) {
  const Vocabulary& v = Vocabulary::standard();
  const std::vector<Token> file = {Token::kHeader, Token::kOpenBrace, Token::kBtnActive, Token::kCloseBrace};
  const auto s = build_windows(file, 4, 3);
  ASSERT_EQ(s.size(), 5u);
  const std::size_t h = v.index_of(Token::kHeader), o = v.index_of(Token::kOpenBrace),
                    a = v.index_of(Token::kBtnActive), c = v.index_of(Token::kCloseBrace);
  EXPECT_EQ(s[0].context, (std::vector<std::size_t>{kPad, kPad, kStart}));
  EXPECT_EQ(s[0].target, h);
  EXPECT_EQ(s[1].context, (std::vector<std::size_t>{kPad, kStart, h}));
  EXPECT_EQ(s[1].target, o);
  EXPECT_EQ(s[2].context, (std::vector<std::size_t>{kStart, h, o}));
  EXPECT_EQ(s[2].target, a);
  EXPECT_EQ(s[3].context, (std::vector<std::size_t>{h, o, a}));
  EXPECT_EQ(s[3].target, c);
  EXPECT_EQ(s[4].context, (std::vector<std::size_t>{o, a, c}));
  EXPECT_EQ(s[4].target, kEnd);
  for (const auto& x : s) EXPECT_EQ(x.image, 4u);
}

TEST(Windows, EmptyFileYieldsStartToEnd) {
  const auto s = build_windows({}, 0, 4);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].context, (std::vector<std::size_t>{kPad, kPad, kPad, kStart}));
  EXPECT_EQ(s[0].target, kEnd);
}

TEST(Windows, WindowBelowTwoRejected) {
  const std::vector<Token> file = {Token::kText};
  EXPECT_THROW(build_windows(file, 0, 1), std::invalid_argument);
}

TEST(Windows, CountAndOverlapProperties) {
  SynthParams sp;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    sp.seed = seed;
    const auto tokens = flatten(synthesize_ast(sp));
    for (std::size_t window : {2u, 5u, 48u}) {
      const auto s = build_windows(tokens, 0, window);
      ASSERT_EQ(s.size(), tokens.size() + 1);
      for (std::size_t j = 0; j < s.size(); ++j) {
        ASSERT_EQ(s[j].context.size(), window);
        EXPECT_NE(s[j].target, kStart);
        EXPECT_NE(s[j].target, kPad);
        if (j + 1 < s.size()) {
          EXPECT_TRUE(std::equal(s[j].context.begin() + 1, s[j].context.end(), s[j + 1].context.begin()));
          EXPECT_EQ(s[j + 1].context.back(), s[j].target);
        }
      }
      EXPECT_EQ(s.back().target, kEnd);
    }
  }
}

TEST(Windows, DatasetConcatenatesFiles) {
  const Dataset d = micro_dataset(3, 1);
  std::vector<std::size_t> per(3, 0);
  for (const auto& s : d.samples) ++per.at(s.image);
  std::size_t total = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_GT(per[i], 1u);
    total += per[i];
  }
  EXPECT_EQ(total, d.samples.size());
  std::vector<GuiImage> two(2);
  std::vector<std::vector<Token>> one(1);
  EXPECT_THROW(make_dataset(two, one, 8), std::invalid_argument);
}

TEST(TrainConfig, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.validate());
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.rho = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.learning_rate = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Trainer, StepGradientIsBatchMeanOfSampleGradients) {
  const Dataset data = micro_dataset(3, 2);
  Model<double> model(quiet_micro());
  model.initialize(5);
  Model<double> reference = model;

  std::vector<std::size_t> batch = {0, 7, 1, data.samples.size() - 1, 3};
  TrainConfig config;
  config.learning_rate = 0.0;
  config.clip = 1e9;
  config.threads = 1;
  Trainer<double> trainer(model, config, 9);
  const double loss = trainer.step(data, batch);

  // Reference: one tape per sample, no sharing of the vision pass.
  reference.params().zero_grad();
  double ref_loss = 0.0;
  Rng unused(0);
  for (std::size_t id : batch) {
    const auto& s = data.samples[id];
    nn::Tape<double> tape;
    const auto p = reference.vision_encode(tape, reference.image_input(tape, data.images[s.image]),
                                           nn::Mode::kTrain, unused);
    const auto l = token_loss(tape, reference.predict(tape, p, s.context, nn::Mode::kTrain, unused), s.target);
    ref_loss += tape.value(l)[0];
    tape.backward(l, 1.0 / static_cast<double>(batch.size()));
  }
  EXPECT_NEAR(loss, ref_loss / static_cast<double>(batch.size()), 1e-12);
  const auto& got = model.params().all();
  const auto& want = reference.params().all();
  for (std::size_t i = 0; i < got.size(); ++i) {
    for (std::size_t k = 0; k < got[i].grad.size(); ++k) {
      ASSERT_NEAR(got[i].grad[k], want[i].grad[k], 1e-12) << got[i].name << "[" << k << "]";
    }
    EXPECT_EQ(got[i].value, want[i].value) << "lr 0 must leave " << got[i].name << " unchanged";
  }
}

TEST(Trainer, InferenceLossMatchesStepLossWithoutDropout) {
  const Dataset data = micro_dataset(2, 3);
  Model<double> model(quiet_micro());
  model.initialize(1);
  TrainConfig config;
  config.learning_rate = 0.0;
  config.threads = 1;
  std::vector<std::size_t> all(data.samples.size());
  std::iota(all.begin(), all.end(), 0);
  Trainer<double> trainer(model, config, 1);
  EXPECT_NEAR(trainer.step(data, all), evaluate_loss(model, data), 1e-12);
}

TEST(Trainer, RemainderBatchCountsAsAStep) {
  const Dataset data = micro_dataset(2, 4);
  Model<float> model(ModelConfig::micro());
  model.initialize(2);
  TrainConfig config;
  config.batch_size = 4;
  config.threads = 1;
  Trainer<float> trainer(model, config, 2);
  trainer.run_epoch(data);
  const std::size_t n = data.samples.size();
  EXPECT_EQ(trainer.steps_done(), (n + 3) / 4);
  EXPECT_EQ(trainer.epochs_done(), 1);
  config.shuffle = Shuffle::kImages;
  Trainer<float> by_image(model, config, 2);
  by_image.run_epoch(data);
  EXPECT_EQ(by_image.steps_done(), (n + 3) / 4);
}

TEST(Trainer, ReducesTrainingLoss) {
  const Dataset data = micro_dataset(2, 5);
  Model<double> model(quiet_micro());
  TrainConfig config;
  config.learning_rate = 1e-2;
  config.batch_size = 8;
  config.epochs = 30;
  config.threads = 1;
  const auto r = train(model, data, config, 6);
  ASSERT_EQ(r.epoch_loss.size(), 30u);
  EXPECT_LT(r.epoch_loss.back(), 0.8 * r.epoch_loss.front());
  EXPECT_LT(evaluate_loss(model, data), r.epoch_loss.front());
}

std::vector<nn::Tensor<float>> snapshot(const Model<float>& m) {
  std::vector<nn::Tensor<float>> out;
  for (const auto& p : m.params().all()) out.push_back(p.value);
  return out;
}

TEST(Trainer, SameSeedSameParameters) {
  const Dataset data = micro_dataset(3, 6);
  TrainConfig config;
  config.learning_rate = 1e-3;
  config.batch_size = 16;
  config.epochs = 2;
  for (int threads : {1, 2}) {
    config.threads = threads;
    Model<float> a(ModelConfig::micro()), b(ModelConfig::micro()), c(ModelConfig::micro());
    const auto ra = train(a, data, config, 11);
    const auto rb = train(b, data, config, 11);
    const auto rc = train(c, data, config, 12);
    EXPECT_EQ(ra.epoch_loss, rb.epoch_loss);
    EXPECT_EQ(snapshot(a), snapshot(b));
    EXPECT_NE(snapshot(a), snapshot(c));
  }
}

TEST(Trainer, ThreadCountDoesNotChangeTheMath) {
  const Dataset data = micro_dataset(4, 7);
  TrainConfig config;
  config.learning_rate = 1e-3;
  config.batch_size = 32;
  config.epochs = 1;
  Model<double> one(ModelConfig::micro()), three(ModelConfig::micro());
  config.threads = 1;
  const auto r1 = train(one, data, config, 3);
  config.threads = 3;
  const auto r3 = train(three, data, config, 3);
  EXPECT_NEAR(r1.epoch_loss[0], r3.epoch_loss[0], 1e-9);
  for (std::size_t i = 0; i < one.params().size(); ++i) {
    const auto& x = one.params().all()[i].value;
    const auto& y = three.params().all()[i].value;
    for (std::size_t k = 0; k < x.size(); ++k) ASSERT_NEAR(x[k], y[k], 1e-9);
  }
}

TEST(Trainer, NonFiniteParameterRaisesNumericalError) {
  const Dataset data = micro_dataset(1, 8);
  Model<float> model(ModelConfig::micro());
  model.initialize(1);
  model.params().get("output.weight").value[0] = std::numeric_limits<float>::quiet_NaN();
  TrainConfig config;
  config.threads = 1;
  Trainer<float> trainer(model, config, 1);
  std::vector<std::size_t> batch = {0, 1};
  try {
    trainer.step(data, batch);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.batch(), 0u);
  }
}

TEST(Trainer, EmptyInputsRejected) {
  Model<float> model(ModelConfig::micro());
  Trainer<float> trainer(model, TrainConfig{}, 1);
  const Dataset data = micro_dataset(1, 9);
  EXPECT_THROW(trainer.step(data, {}), std::invalid_argument);
  EXPECT_THROW(trainer.run_epoch(Dataset{}), std::invalid_argument);
}

}  // namespace
}  // namespace guicode
