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

#include <benchmark/benchmark.h>

#include <numeric>

#include "guicode/model.hpp"
#include "guicode/ops.hpp"
#include "guicode/render.hpp"
#include "guicode/synth.hpp"
#include "guicode/train.hpp"

namespace {

using guicode::Rng;
using guicode::nn::Shape;
using guicode::nn::Tape;
using guicode::nn::Tensor;
using guicode::nn::Var;

Tensor<float> random_tensor(Shape shape, Rng& rng) {
  Tensor<float> t(std::move(shape));
  for (auto& v : t.values()) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  return t;
}

void BM_Conv2dForwardBackward(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto cin = static_cast<std::size_t>(state.range(1));
  const auto cout = static_cast<std::size_t>(state.range(2));
  Rng rng(1);
  const auto x = random_tensor({size, size, cin}, rng);
  const auto k = random_tensor({3, 3, cin, cout}, rng);
  const auto b = random_tensor({cout}, rng);
  for (auto _ : state) {
    Tape<float> tape;
    const Var y = guicode::nn::conv2d(tape, tape.leaf(x, true), tape.leaf(k, true), tape.leaf(b, true));
    tape.backward(guicode::nn::sum(tape, y));
    benchmark::DoNotOptimize(tape.grad(Var{0}).data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size * size * 9 * cin * cout));
}
BENCHMARK(BM_Conv2dForwardBackward)->Args({64, 3, 8})->Args({32, 16, 16})->Args({16, 32, 32});

void BM_LstmStep(benchmark::State& state) {
  const auto in = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  Rng rng(2);
  std::vector<Tensor<float>> w;
  for (int g = 0; g < 4; ++g) {
    w.push_back(random_tensor({in, n}, rng));
    w.push_back(random_tensor({n, n}, rng));
  }
  for (int g = 0; g < 4; ++g) w.push_back(random_tensor({n}, rng));
  const auto x = random_tensor({in}, rng);
  for (auto _ : state) {
    Tape<float> tape(false);
    guicode::nn::LstmWeights lw{};
    Var* slots[] = {&lw.w_ix, &lw.w_iy, &lw.w_fx, &lw.w_fy, &lw.w_ox, &lw.w_oy,
                    &lw.w_cx, &lw.w_cy, &lw.b_i,  &lw.b_f,  &lw.b_o,  &lw.b_c};
    for (std::size_t i = 0; i < 12; ++i) *slots[i] = tape.leaf(w[i]);
    guicode::nn::LstmState s{tape.leaf(Tensor<float>({n})), tape.leaf(Tensor<float>({n}))};
    s = guicode::nn::lstm_step(tape, tape.leaf(x), s, lw);
    benchmark::DoNotOptimize(tape.value(s.h).data());
  }
}
BENCHMARK(BM_LstmStep)->Args({18, 32})->Args({160, 64})->Args({1152, 512});

void BM_TrainStepDesk(benchmark::State& state) {
  guicode::Model<float> model(guicode::ModelConfig::desk());
  model.initialize(3);
  guicode::SynthParams sp = guicode::SynthParams::desk();
  std::vector<guicode::GuiImage> images;
  std::vector<std::vector<guicode::Token>> files;
  for (std::uint64_t i = 0; i < 4; ++i) {
    sp.seed = i;
    const auto ast = guicode::synthesize_ast(sp);
    images.push_back(guicode::rasterize(ast, 64, 64, guicode::theme_by_name("default")));
    files.push_back(guicode::flatten(ast));
  }
  const auto data = guicode::make_dataset(std::move(images), files, 24);
  guicode::TrainConfig config;
  config.threads = 1;
  guicode::Trainer<float> trainer(model, config, 4);
  std::vector<std::size_t> batch(std::min<std::size_t>(64, data.samples.size()));
  std::iota(batch.begin(), batch.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(trainer.step(data, batch));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.size()));
}
BENCHMARK(BM_TrainStepDesk)->Unit(benchmark::kMillisecond);

void BM_Rasterize(benchmark::State& state) {
  guicode::SynthParams sp;
  sp.seed = 5;
  const auto ast = guicode::synthesize_ast(sp);
  const auto theme = guicode::theme_by_name("default");
  const int size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(guicode::rasterize(ast, size, size, theme).data.data());
}
BENCHMARK(BM_Rasterize)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
