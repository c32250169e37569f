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
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "guicode/dsl.hpp"
#include "guicode/image.hpp"
#include "guicode/model.hpp"
#include "guicode/optim.hpp"

namespace guicode {

// One (image, context) -> next token example. Contexts are left-padded with
// PAD to exactly `window` vocabulary indices.
struct TrainingSample {
  std::size_t image = 0;
  std::vector<std::size_t> context;
  std::size_t target = 0;

  bool operator==(const TrainingSample&) const = default;
};

// Wraps the file in START ... END and emits one sample per predictable
// position: N tokens give N + 1 samples, the first with context
// [PAD x (window - 1), START]. All samples share the image index.
std::vector<TrainingSample> build_windows(std::span<const Token> tokens, std::size_t image,
                                          std::size_t window,
                                          const Vocabulary& vocab = Vocabulary::standard());

struct Dataset {
  std::vector<GuiImage> images;
  std::vector<TrainingSample> samples;
};

Dataset make_dataset(std::vector<GuiImage> images, std::span<const std::vector<Token>> files,
                     std::size_t window);

enum class Shuffle {
  kSamples,  // every sample independently
  kImages,   // image order, then sample order within each image
};

struct TrainConfig {
  double learning_rate = 1e-4;
  double rho = 0.9;
  double epsilon = 1e-8;
  double clip = 1.0;  // gradients clamped to [-clip, clip]
  int batch_size = 64;
  int epochs = 10;
  // kImages keeps most of a batch on one or two images, so the vision
  // encoder runs far fewer times per epoch.
  Shuffle shuffle = Shuffle::kSamples;
  // Worker count; 0 reads GUICODE_THREADS, falling back to the hardware count.
  int threads = 0;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

int resolve_threads(int requested);

class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::size_t batch, double max_abs_grad, const std::string& what)
      : std::runtime_error(what), batch_(batch), max_abs_grad_(max_abs_grad) {}
  std::size_t batch() const { return batch_; }
  double max_abs_grad() const { return max_abs_grad_; }

 private:
  std::size_t batch_;
  double max_abs_grad_;
};

// Mini-batch RMSProp on mean per-sample log loss. Samples of a batch that
// share an image share one vision-encoder pass, its dropout mask included.
template <typename T>
class Trainer {
 public:
  Trainer(Model<T>& model, TrainConfig config, std::uint64_t seed);
  ~Trainer();

  // One optimizer step on the given samples. Returns their mean loss.
  double step(const Dataset& data, std::span<const std::size_t> batch);
  // Shuffles, then steps through every batch; the last may be short.
  // Returns the mean per-sample training loss.
  double run_epoch(const Dataset& data);

  int epochs_done() const { return epoch_; }
  std::size_t steps_done() const { return step_; }
  const TrainConfig& config() const { return config_; }

 private:
  struct Worker;

  Model<T>& model_;
  TrainConfig config_;
  std::uint64_t seed_;
  nn::RmsProp<T> optimizer_;
  std::vector<std::unique_ptr<Worker>> workers_;
  int epoch_ = 0;
  std::size_t step_ = 0;
};

struct TrainResult {
  std::vector<double> epoch_loss;
};

// Initializes the model from `seed`, then trains for config.epochs epochs.
template <typename T>
TrainResult train(Model<T>& model, const Dataset& data, const TrainConfig& config, std::uint64_t seed,
                  const std::function<void(int epoch, double loss)>& on_epoch = {});

// Mean log loss over all samples in inference mode.
template <typename T>
double evaluate_loss(Model<T>& model, const Dataset& data);

extern template class Trainer<float>;
extern template class Trainer<double>;

}  // namespace guicode
