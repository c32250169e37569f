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

#include "guicode/grad_check.hpp"
#include "guicode/ops.hpp"
#include "test_util.hpp"

namespace guicode::nn {
namespace {

using guicode::testing::random_coeffs;
using guicode::testing::random_param;
using guicode::testing::weighted_sum;

constexpr double kTol = 1e-4;

Tensor<double> run_unary(Var (*op)(Tape<double>&, Var), std::vector<double> in) {
  Tape<double> tape(false);
  const std::size_t n = in.size();
  return tape.value(op(tape, tape.leaf(Tensor<double>({n}, std::move(in)))));
}

// Naive zero-padded 3x3 convolution, written independently of the im2col path.
Tensor<double> naive_conv(const Tensor<double>& x, const Tensor<double>& k, const Tensor<double>& b) {
  const std::size_t h = x.dim(0), w = x.dim(1), ci = x.dim(2), co = k.dim(3);
  Tensor<double> out({h, w, co});
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t xx = 0; xx < w; ++xx) {
      for (std::size_t o = 0; o < co; ++o) {
        double s = b[o];
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const long sy = static_cast<long>(y) + dy, sx = static_cast<long>(xx) + dx;
            if (sy < 0 || sx < 0 || sy >= static_cast<long>(h) || sx >= static_cast<long>(w)) continue;
            for (std::size_t c = 0; c < ci; ++c) {
              s += x[(static_cast<std::size_t>(sy) * w + static_cast<std::size_t>(sx)) * ci + c] *
                   k[((static_cast<std::size_t>(dy + 1) * 3 + static_cast<std::size_t>(dx + 1)) * ci + c) * co + o];
            }
          }
        }
        out[(y * w + xx) * co + o] = s;
      }
    }
  }
  return out;
}

TEST(Conv2d, ZeroInputZeroBiasGivesZero) {
  Rng rng(1);
  Tape<double> tape(false);
  Tensor<double> k({3, 3, 2, 4});
  guicode::testing::fill_uniform(k, rng);
  const Var out = conv2d(tape, tape.leaf(Tensor<double>({5, 6, 2})), tape.leaf(k), tape.leaf(Tensor<double>({4})));
  EXPECT_EQ(tape.value(out).shape(), (Shape{5, 6, 4}));
  EXPECT_EQ(tape.value(out).max_abs(), 0.0);
}

TEST(Conv2d, OnesKernelOnOnesImage) {
  Tape<double> tape(false);
  const Var out = conv2d(tape, tape.leaf(Tensor<double>({3, 3, 1}, 1.0)), tape.leaf(Tensor<double>({3, 3, 1, 1}, 1.0)),
                         tape.leaf(Tensor<double>({1})));
  const auto& v = tape.value(out);
  const double want[9] = {4, 6, 4, 6, 9, 6, 4, 6, 4};
  for (int i = 0; i < 9; ++i) EXPECT_EQ(v[i], want[i]) << i;
}

TEST(Conv2d, MatchesNaiveLoops) {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t h = 2 + rng.uniform_index(6), w = 2 + rng.uniform_index(6);
    const std::size_t ci = 1 + rng.uniform_index(4), co = 1 + rng.uniform_index(5);
    Tensor<double> x({h, w, ci}), k({3, 3, ci, co}), b({co});
    guicode::testing::fill_uniform(x, rng);
    guicode::testing::fill_uniform(k, rng);
    guicode::testing::fill_uniform(b, rng);
    Tape<double> tape(false);
    const auto& got = tape.value(conv2d(tape, tape.leaf(x), tape.leaf(k), tape.leaf(b)));
    const auto want = naive_conv(x, k, b);
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(Conv2d, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    ParamSet<double> ps;
    auto& x = random_param(ps, "x", {4, 5, 2}, rng);
    auto& k = random_param(ps, "k", {3, 3, 2, 3}, rng);
    auto& b = random_param(ps, "b", {3}, rng);
    const auto coeffs = random_coeffs(4 * 5 * 3, rng);
    const auto report = grad_check(ps, [&](Tape<double>& t) {
      return weighted_sum(t, conv2d(t, t.param(x), t.param(k), t.param(b)), coeffs);
    });
    EXPECT_LE(report.max_rel_error, kTol) << report.worst_param << "[" << report.worst_index << "]";
  }
}

TEST(Conv2d, ShapeMismatch) {
  Tape<double> tape(false);
  EXPECT_THROW(conv2d(tape, tape.leaf(Tensor<double>({3, 3, 2})), tape.leaf(Tensor<double>({3, 3, 1, 1})),
                      tape.leaf(Tensor<double>({1}))),
               TensorError);
  EXPECT_THROW(conv2d(tape, tape.leaf(Tensor<double>({3, 3, 1})), tape.leaf(Tensor<double>({5, 5, 1, 1})),
                      tape.leaf(Tensor<double>({1}))),
               TensorError);
}

TEST(MaxPool, TwoByTwo) {
  Tape<double> tape(false);
  const Var out = maxpool2d(tape, tape.leaf(Tensor<double>({2, 2, 1}, {1, 2, 3, 4})));
  EXPECT_EQ(tape.value(out).shape(), (Shape{1, 1, 1}));
  EXPECT_EQ(tape.value(out)[0], 4.0);
}

TEST(MaxPool, ConstantInputRoutesToFirstPosition) {
  Tape<double> tape;
  const Var in = tape.leaf(Tensor<double>({4, 4, 1}, 7.0), true);
  const Var out = maxpool2d(tape, in);
  for (double v : tape.value(out).values()) EXPECT_EQ(v, 7.0);
  tape.backward(sum(tape, out));
  const auto& g = tape.grad(in);
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ(g[y * 4 + x], (y % 2 == 0 && x % 2 == 0) ? 1.0 : 0.0);
  }
}

TEST(MaxPool, RandomFourByFourHasFourOnes) {
  Rng rng(3);
  Tape<double> tape;
  Tensor<double> x({4, 4, 1});
  guicode::testing::fill_uniform(x, rng);
  const Var in = tape.leaf(x, true);
  tape.backward(sum(tape, maxpool2d(tape, in)));
  int ones = 0, zeros = 0;
  for (double v : tape.grad(in).values()) (v == 1.0 ? ones : zeros) += (v == 1.0 || v == 0.0) ? 1 : 0;
  EXPECT_EQ(ones, 4);
  EXPECT_EQ(zeros, 12);
}

TEST(MaxPool, AgreesWithWindowEnumeration) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t c = 1 + rng.uniform_index(3);
    Tensor<double> x({8, 8, c});
    // Coarse values force ties now and then.
    for (auto& v : x.values()) v = static_cast<double>(rng.uniform_index(5));
    Tape<double> tape;
    const Var in = tape.leaf(x, true);
    const Var out = maxpool2d(tape, in);
    const auto coeffs = random_coeffs(4 * 4 * c, rng);
    tape.backward(weighted_sum(tape, out, coeffs));

    Tensor<double> want_grad({8, 8, c});
    for (std::size_t oy = 0; oy < 4; ++oy) {
      for (std::size_t ox = 0; ox < 4; ++ox) {
        for (std::size_t ch = 0; ch < c; ++ch) {
          double best = -1e300;
          std::size_t arg = 0;
          for (std::size_t dy = 0; dy < 2; ++dy) {
            for (std::size_t dx = 0; dx < 2; ++dx) {
              const std::size_t idx = ((2 * oy + dy) * 8 + (2 * ox + dx)) * c + ch;
              if (x[idx] > best) {
                best = x[idx];
                arg = idx;
              }
            }
          }
          const std::size_t o = (oy * 4 + ox) * c + ch;
          EXPECT_EQ(tape.value(out)[o], best);
          want_grad[arg] += coeffs[o];
        }
      }
    }
    EXPECT_EQ(tape.grad(in), want_grad);
  }
}

TEST(MaxPool, OddExtentRejected) {
  Tape<double> tape(false);
  try {
    maxpool2d(tape, tape.leaf(Tensor<double>({3, 4, 1})));
    FAIL();
  } catch (const TensorError& e) {
    EXPECT_EQ(e.kind(), TensorError::Kind::kOddSpatialExtent);
  }
}

TEST(MaxPool, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed + 100);
    ParamSet<double> ps;
    auto& x = random_param(ps, "x", {4, 6, 3}, rng);
    const auto coeffs = random_coeffs(2 * 3 * 3, rng);
    const auto report =
        grad_check(ps, [&](Tape<double>& t) { return weighted_sum(t, maxpool2d(t, t.param(x)), coeffs); });
    EXPECT_LE(report.max_rel_error, kTol);
  }
}

TEST(Dense, IdentityWeightsAndZeroInput) {
  Tape<double> tape(false);
  Tensor<double> eye({3, 3});
  for (int i = 0; i < 3; ++i) eye[i * 4] = 1.0;
  const Var out = dense(tape, tape.leaf(Tensor<double>({3}, {0.5, -2, 3})), tape.leaf(eye), tape.leaf(Tensor<double>({3})));
  EXPECT_EQ(tape.value(out).vector(), (std::vector<double>{0.5, -2, 3}));
  const Var out2 = dense(tape, tape.leaf(Tensor<double>({3})), tape.leaf(eye), tape.leaf(Tensor<double>({3}, {1, 2, 3})));
  EXPECT_EQ(tape.value(out2).vector(), (std::vector<double>{1, 2, 3}));
}

TEST(Dense, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed + 200);
    ParamSet<double> ps;
    auto& x = random_param(ps, "x", {7}, rng);
    auto& w = random_param(ps, "w", {7, 5}, rng);
    auto& b = random_param(ps, "b", {5}, rng);
    const auto coeffs = random_coeffs(5, rng);
    const auto report = grad_check(
        ps, [&](Tape<double>& t) { return weighted_sum(t, dense(t, t.param(x), t.param(w), t.param(b)), coeffs); });
    EXPECT_LE(report.max_rel_error, kTol);
  }
}

TEST(Dense, ShapeMismatch) {
  Tape<double> tape(false);
  EXPECT_THROW(dense(tape, tape.leaf(Tensor<double>({3})), tape.leaf(Tensor<double>({4, 2})), tape.leaf(Tensor<double>({2}))),
               TensorError);
}

TEST(Activations, PointValues) {
  EXPECT_EQ(run_unary(&sigmoid<double>, {0.0})[0], 0.5);
  EXPECT_EQ(run_unary(&tanh<double>, {0.0})[0], 0.0);
  EXPECT_EQ(run_unary(&relu<double>, {-1.0})[0], 0.0);
  EXPECT_EQ(run_unary(&relu<double>, {2.5})[0], 2.5);
  const auto s = run_unary(&sigmoid<double>, {-800.0, 800.0});
  EXPECT_EQ(s[0], 0.0);
  EXPECT_EQ(s[1], 1.0);
}

TEST(Activations, SoftmaxUniformAndStable) {
  for (std::size_t k : {1u, 2u, 7u, 18u}) {
    const auto y = run_unary(&softmax<double>, std::vector<double>(k, 3.25));
    for (double v : y.values()) EXPECT_NEAR(v, 1.0 / static_cast<double>(k), 1e-15);
  }
  const auto big = run_unary(&softmax<double>, {1000.0, 1000.0});
  EXPECT_EQ(big[0], 0.5);
  EXPECT_EQ(big[1], 0.5);
}

TEST(Activations, SoftmaxIsADistribution) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> logits(1 + rng.uniform_index(30));
    for (auto& v : logits) v = rng.uniform(-20, 20);
    const auto y = run_unary(&softmax<double>, logits);
    double total = 0;
    for (double v : y.values()) {
      EXPECT_GT(v, 0.0);
      total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Activations, NonFiniteInputRejected) {
  for (auto op : {&relu<double>, &sigmoid<double>, &tanh<double>, &softmax<double>}) {
    try {
      run_unary(op, {1.0, std::nan("")});
      FAIL();
    } catch (const TensorError& e) {
      EXPECT_EQ(e.kind(), TensorError::Kind::kNonFinite);
    }
    EXPECT_THROW(run_unary(op, {HUGE_VAL}), TensorError);
  }
}

TEST(Activations, GradientsMatchFiniteDifferences) {
  for (auto op : {&relu<double>, &sigmoid<double>, &tanh<double>, &softmax<double>}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng(seed + 300);
      ParamSet<double> ps;
      auto& x = random_param(ps, "x", {9}, rng, -2.0, 2.0);
      const auto coeffs = random_coeffs(9, rng);
      const auto report = grad_check(ps, [&](Tape<double>& t) { return weighted_sum(t, op(t, t.param(x)), coeffs); });
      EXPECT_LE(report.max_rel_error, kTol);
    }
  }
}

TEST(CrossEntropy, OneHotAndUniform) {
  Tape<double> tape(false);
  const Var onehot = tape.leaf(Tensor<double>({3}, {0, 1, 0}));
  EXPECT_EQ(tape.value(cross_entropy(tape, onehot, 1))[0], 0.0);
  for (std::size_t k : {2u, 5u, 18u}) {
    const Var u = tape.leaf(Tensor<double>({k}, 1.0 / static_cast<double>(k)));
    EXPECT_NEAR(tape.value(cross_entropy(tape, u, 0))[0], std::log(static_cast<double>(k)), 1e-12);
  }
}

TEST(CrossEntropy, ZeroProbabilityIsClamped) {
  Tape<double> tape;
  const Var p = tape.leaf(Tensor<double>({2}, {1.0, 0.0}), true);
  const Var l = cross_entropy(tape, p, 1);
  EXPECT_NEAR(tape.value(l)[0], -std::log(1e-12), 1e-9);
  EXPECT_TRUE(std::isfinite(tape.value(l)[0]));
  tape.backward(l);
  EXPECT_TRUE(tape.grad(p).all_finite());
}

TEST(CrossEntropy, SoftmaxInputGradientIsYMinusTarget) {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    ParamSet<double> ps;
    auto& z = random_param(ps, "z", {6}, rng, -3, 3);
    const std::size_t target = rng.uniform_index(6);
    Tape<double> tape;
    const Var y = softmax(tape, tape.param(z));
    tape.backward(cross_entropy(tape, y, target));
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_NEAR(z.grad[i], tape.value(y)[i] - (i == target ? 1.0 : 0.0), 1e-12);
    }
    const auto report = grad_check(ps, [&](Tape<double>& t) { return cross_entropy(t, softmax(t, t.param(z)), target); });
    EXPECT_LE(report.max_rel_error, kTol);
  }
}

TEST(Dropout, RateZeroAndInferAreIdentity) {
  Rng rng(9);
  Tape<double> tape(false);
  Tensor<double> x({100});
  guicode::testing::fill_uniform(x, rng);
  const Var in = tape.leaf(x);
  for (Mode m : {Mode::kTrain, Mode::kInfer}) EXPECT_EQ(tape.value(dropout(tape, in, 0.0, m, rng)), x);
  for (double r : {0.1, 0.5, 0.9}) EXPECT_EQ(tape.value(dropout(tape, in, r, Mode::kInfer, rng)), x);
}

TEST(Dropout, SurvivorFractionAndScale) {
  Rng rng(10);
  Tape<double> tape(false);
  constexpr std::size_t n = 1000000;
  const Var out = dropout(tape, tape.leaf(Tensor<double>({n}, 1.0)), 0.25, Mode::kTrain, rng);
  std::size_t survivors = 0;
  for (double v : tape.value(out).values()) {
    if (v != 0.0) {
      ++survivors;
      ASSERT_EQ(v, 1.0 / 0.75);
    }
  }
  EXPECT_NEAR(static_cast<double>(survivors) / n, 0.75, 0.01);
}

TEST(Dropout, InvalidRate) {
  Rng rng(11);
  Tape<double> tape(false);
  const Var x = tape.leaf(Tensor<double>({4}));
  for (double r : {-0.1, 1.0, 1.5, std::nan("")}) {
    try {
      dropout(tape, x, r, Mode::kTrain, rng);
      FAIL() << r;
    } catch (const TensorError& e) {
      EXPECT_EQ(e.kind(), TensorError::Kind::kInvalidRate);
    }
  }
}

TEST(Dropout, GradientFollowsMask) {
  Rng rng(12);
  Tape<double> tape;
  const Var in = tape.leaf(Tensor<double>({1000}, 2.0), true);
  const Var out = dropout(tape, in, 0.5, Mode::kTrain, rng);
  tape.backward(sum(tape, out));
  for (std::size_t i = 0; i < 1000; ++i) {
    EXPECT_EQ(tape.grad(in)[i], tape.value(out)[i] == 0.0 ? 0.0 : 2.0);
  }
}

TEST(Structural, ConcatSliceReshapeGradients) {
  Rng rng(13);
  ParamSet<double> ps;
  auto& a = random_param(ps, "a", {3}, rng);
  auto& b = random_param(ps, "b", {2, 2}, rng);
  const auto coeffs = random_coeffs(5, rng);
  const auto report = grad_check(ps, [&](Tape<double>& t) {
    const Var parts[] = {t.param(a), reshape(t, t.param(b), {4})};
    const Var c = concat<double>(t, parts);
    return weighted_sum(t, slice(t, c, 1, 5), coeffs);
  });
  EXPECT_LE(report.max_rel_error, 1e-9);
  Tape<double> tape(false);
  EXPECT_THROW(slice(tape, tape.leaf(Tensor<double>({3})), 2, 2), TensorError);
  EXPECT_THROW(reshape(tape, tape.leaf(Tensor<double>({3})), {2, 2}), TensorError);
}

TEST(Tape, BranchGradientsAdd) {
  Rng rng(14);
  Tensor<double> x({5});
  guicode::testing::fill_uniform(x, rng);
  auto grad_of = [&](int which) {
    Tape<double> tape;
    const Var in = tape.leaf(x, true);
    const Var a = sum(tape, tanh(tape, in));
    const Var b = sum(tape, sigmoid(tape, scale(tape, in, 3.0)));
    const Var root = which == 0 ? a : which == 1 ? b : add(tape, a, b);
    tape.backward(root);
    return tape.grad(in);
  };
  const auto ga = grad_of(0), gb = grad_of(1), gab = grad_of(2);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(gab[i], ga[i] + gb[i], 1e-15);
}

TEST(Tape, ParamNodesAccumulateAcrossUses) {
  ParamSet<double> ps;
  auto& w = ps.add("w", {2});
  w.value[0] = 1.5;
  w.value[1] = -0.5;
  Tape<double> tape;
  const Var v1 = tape.param(w);
  const Var v2 = tape.param(w);
  EXPECT_EQ(v1.id, v2.id);
  tape.backward(sum(tape, add(tape, v1, scale(tape, v2, 2.0))));
  EXPECT_EQ(w.grad[0], 3.0);
  EXPECT_EQ(w.grad[1], 3.0);
}

}  // namespace
}  // namespace guicode::nn
