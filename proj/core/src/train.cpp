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

#include "guicode/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_map>

#include "guicode/rng.hpp"

namespace guicode {

using nn::Mode;
using nn::Tape;
using nn::Var;

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("train config: learning_rate must be finite and >= 0");
  }
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("train config: rho must lie in [0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("train config: epsilon must be positive");
  if (!(clip > 0.0)) throw std::invalid_argument("train config: clip must be positive");
  if (batch_size < 1) throw std::invalid_argument("train config: batch_size must be >= 1");
  if (epochs < 0) throw std::invalid_argument("train config: epochs must be >= 0");
  if (threads < 0) throw std::invalid_argument("train config: threads must be >= 0");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GUICODE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Group {
  std::size_t image;
  std::vector<std::size_t> samples;
};

// Samples grouped by image, groups in order of first appearance.
std::vector<Group> group_by_image(const Dataset& data, std::span<const std::size_t> batch) {
  std::vector<Group> groups;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t id : batch) {
    const std::size_t image = data.samples.at(id).image;
    auto [it, inserted] = slot.emplace(image, groups.size());
    if (inserted) groups.push_back({image, {}});
    groups[it->second].samples.push_back(id);
  }
  return groups;
}

// Forward and backward for one image group; gradients land in the model's
// Parameter::grad scaled by `weight`. Returns the summed sample loss.
template <typename T>
double run_group(Model<T>& model, const Dataset& data, const Group& group, std::uint64_t seed, T weight) {
  Rng rng(seed);
  Tape<T> tape;
  const Var image = model.image_input(tape, data.images.at(group.image));
  const Var p = model.vision_encode(tape, image, Mode::kTrain, rng);
  std::vector<Var> losses;
  losses.reserve(group.samples.size());
  double total = 0.0;
  for (std::size_t id : group.samples) {
    const TrainingSample& s = data.samples[id];
    const Var probs = model.predict(tape, p, s.context, Mode::kTrain, rng);
    const Var l = token_loss(tape, probs, s.target);
    total += static_cast<double>(tape.value(l)[0]);
    losses.push_back(l);
  }
  const Var sum = nn::sum(tape, nn::concat<T>(tape, losses));
  tape.backward(sum, weight);
  return total;
}

template <typename T>
double max_abs_grad(const nn::ParamSet<T>& params) {
  double m = 0.0;
  for (const auto& p : params.all()) {
    for (T g : p.grad.values()) {
      const double a = std::abs(static_cast<double>(g));
      if (!(a <= m)) m = a;  // NaN propagates
    }
  }
  return m;
}

}  // namespace

template <typename T>
struct Trainer<T>::Worker {
  std::optional<Model<T>> replica;
};

template <typename T>
Trainer<T>::Trainer(Model<T>& model, TrainConfig config, std::uint64_t seed)
    : model_(model),
      config_(config),
      seed_(seed),
      optimizer_(nn::RmsPropOptions{config.learning_rate, config.rho, config.epsilon}) {
  config_.validate();
}

template <typename T>
Trainer<T>::~Trainer() = default;

template <typename T>
double Trainer<T>::step(const Dataset& data, std::span<const std::size_t> batch) {
  if (batch.empty()) throw std::invalid_argument("Trainer::step: empty batch");
  const std::vector<Group> groups = group_by_image(data, batch);
  const T weight = static_cast<T>(1.0 / static_cast<double>(batch.size()));
  const std::size_t step_id = step_;
  auto group_seed = [&](const Group& g) { return derive_seed(seed_, {0x57e9, step_id, g.image}); };

  std::vector<double> group_loss(groups.size(), 0.0);
  const auto workers =
      std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(config_.threads)), groups.size());
  auto& params = model_.params();
  params.zero_grad();
  try {
    if (workers <= 1) {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        group_loss[g] = run_group(model_, data, groups[g], group_seed(groups[g]), weight);
      }
    } else {
      while (workers_.size() < workers) workers_.push_back(std::make_unique<Worker>());
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < workers; ++w) {
        Worker& worker = *workers_[w];
        if (!worker.replica) {
          worker.replica.emplace(model_);
        } else {
          auto& dst = worker.replica->params().all();
          const auto& src = params.all();
          for (std::size_t i = 0; i < src.size(); ++i) dst[i].value = src[i].value;
        }
        worker.replica->params().zero_grad();
        const std::size_t lo = groups.size() * w / workers;
        const std::size_t hi = groups.size() * (w + 1) / workers;
        threads.emplace_back([&, w, lo, hi] {
          try {
            for (std::size_t g = lo; g < hi; ++g) {
              group_loss[g] = run_group(*workers_[w]->replica, data, groups[g], group_seed(groups[g]), weight);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      // Fixed-order reduction: worker 0 first.
      for (std::size_t w = 0; w < workers; ++w) {
        const auto& src = workers_[w]->replica->params().all();
        auto& dst = params.all();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i].grad += src[i].grad;
      }
    }
  } catch (const nn::TensorError& e) {
    if (e.kind() != nn::TensorError::Kind::kNonFinite) throw;
    throw NumericalError(step_id, max_abs_grad(params),
                         "non-finite activation in batch " + std::to_string(step_id) + ": " + e.what());
  }

  const double loss = std::accumulate(group_loss.begin(), group_loss.end(), 0.0) / static_cast<double>(batch.size());
  const double gmax = max_abs_grad(params);
  if (!std::isfinite(loss) || !std::isfinite(gmax)) {
    throw NumericalError(step_id, gmax,
                         "non-finite loss in batch " + std::to_string(step_id) + " (max |grad| " + std::to_string(gmax) + ")");
  }
  const T clip = static_cast<T>(config_.clip);
  nn::clip_gradients(params, -clip, clip);
  optimizer_.step(params);
  ++step_;
  return loss;
}

template <typename T>
double Trainer<T>::run_epoch(const Dataset& data) {
  if (data.samples.empty()) throw std::invalid_argument("train: empty dataset");
  Rng rng(derive_seed(seed_, {0x5f0f, static_cast<std::uint64_t>(epoch_)}));
  auto shuffle = [&rng](std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.uniform_index(i)]);
  };

  std::vector<std::size_t> order;
  order.reserve(data.samples.size());
  if (config_.shuffle == Shuffle::kSamples) {
    order.resize(data.samples.size());
    std::iota(order.begin(), order.end(), 0);
    shuffle(order);
  } else {
    std::vector<std::vector<std::size_t>> by_image(data.images.size());
    for (std::size_t i = 0; i < data.samples.size(); ++i) by_image.at(data.samples[i].image).push_back(i);
    std::vector<std::size_t> images(by_image.size());
    std::iota(images.begin(), images.end(), 0);
    shuffle(images);
    for (std::size_t im : images) {
      shuffle(by_image[im]);
      order.insert(order.end(), by_image[im].begin(), by_image[im].end());
    }
  }

  const auto bs = static_cast<std::size_t>(config_.batch_size);
  double total = 0.0;
  for (std::size_t lo = 0; lo < order.size(); lo += bs) {
    const std::size_t n = std::min(bs, order.size() - lo);
    total += step(data, std::span<const std::size_t>(order).subspan(lo, n)) * static_cast<double>(n);
  }
  ++epoch_;
  return total / static_cast<double>(order.size());
}

template <typename T>
TrainResult train(Model<T>& model, const Dataset& data, const TrainConfig& config, std::uint64_t seed,
                  const std::function<void(int, double)>& on_epoch) {
  config.validate();
  if (data.samples.empty()) throw std::invalid_argument("train: empty dataset");
  model.initialize(derive_seed(seed, {0x1417}));
  Trainer<T> trainer(model, config, derive_seed(seed, {0x7ba1}));
  TrainResult result;
  for (int e = 0; e < config.epochs; ++e) {
    const double loss = trainer.run_epoch(data);
    result.epoch_loss.push_back(loss);
    if (on_epoch) on_epoch(e + 1, loss);
  }
  return result;
}

template <typename T>
double evaluate_loss(Model<T>& model, const Dataset& data) {
  if (data.samples.empty()) throw std::invalid_argument("evaluate_loss: empty dataset");
  std::vector<std::size_t> all(data.samples.size());
  std::iota(all.begin(), all.end(), 0);
  Rng unused(0);
  double total = 0.0;
  for (const Group& g : group_by_image(data, all)) {
    Tape<T> tape(false);
    const Var p = model.vision_encode(tape, model.image_input(tape, data.images.at(g.image)), Mode::kInfer, unused);
    for (std::size_t id : g.samples) {
      const TrainingSample& s = data.samples[id];
      const Var probs = model.predict(tape, p, s.context, Mode::kInfer, unused);
      total += static_cast<double>(tape.value(token_loss(tape, probs, s.target))[0]);
    }
  }
  return total / static_cast<double>(data.samples.size());
}

template class Trainer<float>;
template class Trainer<double>;
template TrainResult train<float>(Model<float>&, const Dataset&, const TrainConfig&, std::uint64_t,
                                  const std::function<void(int, double)>&);
template TrainResult train<double>(Model<double>&, const Dataset&, const TrainConfig&, std::uint64_t,
                                   const std::function<void(int, double)>&);
template double evaluate_loss<float>(Model<float>&, const Dataset&);
template double evaluate_loss<double>(Model<double>&, const Dataset&);

}  // namespace guicode
