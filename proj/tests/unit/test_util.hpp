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

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "guicode/rng.hpp"
#include "guicode/ops.hpp"
#include "guicode/tape.hpp"

namespace guicode::testing {

inline void fill_uniform(nn::Tensor<double>& t, Rng& rng, double lo = -1.0, double hi = 1.0) {
  for (auto& v : t.values()) v = rng.uniform(lo, hi);
}

inline nn::Parameter<double>& random_param(nn::ParamSet<double>& set, const std::string& name,
                                           nn::Shape shape, Rng& rng, double lo = -1.0, double hi = 1.0) {
  auto& p = set.add(name, std::move(shape));
  fill_uniform(p.value, rng, lo, hi);
  return p;
}

// Scalar sum(coeffs * x): a loss whose gradient differs in every component.
template <typename T>
nn::Var weighted_sum(nn::Tape<T>& tape, nn::Var x, const std::vector<T>& coeffs) {
  const std::size_t n = tape.value(x).size();
  const nn::Var flat = nn::reshape(tape, x, {n});
  const nn::Var w = tape.leaf(nn::Tensor<T>({n, 1}, coeffs));
  const nn::Var b = tape.leaf(nn::Tensor<T>({1}));
  return nn::dense(tape, flat, w, b);
}

inline std::vector<double> random_coeffs(std::size_t n, Rng& rng) {
  std::vector<double> c(n);
  for (auto& v : c) v = rng.uniform(-1.0, 1.0);
  return c;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("guicode_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace guicode::testing
