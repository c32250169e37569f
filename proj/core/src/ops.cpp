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

#include "guicode/ops.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>

namespace guicode::nn {
namespace {

template <typename T>
using MatR = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using RowVec = Eigen::Matrix<T, 1, Eigen::Dynamic>;

template <typename T>
Eigen::Map<const MatR<T>> mat(const Tensor<T>& t, std::size_t rows, std::size_t cols) {
  return {t.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}
template <typename T>
Eigen::Map<MatR<T>> mat(Tensor<T>& t, std::size_t rows, std::size_t cols) {
  return {t.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}
template <typename T>
Eigen::Map<const RowVec<T>> row(const Tensor<T>& t) {
  return {t.data(), static_cast<Eigen::Index>(t.size())};
}
template <typename T>
Eigen::Map<RowVec<T>> row(Tensor<T>& t) {
  return {t.data(), static_cast<Eigen::Index>(t.size())};
}
template <typename T>
Eigen::Map<const RowVec<T>> row(const T* p, std::size_t n) {
  return {p, static_cast<Eigen::Index>(n)};
}

template <typename T>
void require_finite(const Tensor<T>& t, const char* op) {
  if (!t.all_finite()) {
    throw TensorError(TensorError::Kind::kNonFinite, std::string(op) + ": non-finite input");
  }
}

template <typename T>
T stable_sigmoid(T x) {
  if (x >= T{0}) return T{1} / (T{1} + std::exp(-x));
  const T e = std::exp(x);
  return e / (T{1} + e);
}

// Elementwise op whose derivative is expressed through the output value.
template <typename T, typename F, typename D>
Var unary(Tape<T>& tape, Var a, const char* name, F f, D derivative_from_output) {
  const Tensor<T>& x = tape.value(a);
  require_finite(x, name);
  Tensor<T> y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return tape.push(std::move(y), tape.requires_grad(a), [a, derivative_from_output](Tape<T>& t, Var self) {
    const Tensor<T>& out = t.value(self);
    const Tensor<T>& g = t.grad(self);
    Tensor<T>& gx = t.grad(a);
    for (std::size_t i = 0; i < out.size(); ++i) gx[i] += g[i] * derivative_from_output(out[i]);
  });
}

}  // namespace

template <typename T>
Var conv2d(Tape<T>& tape, Var input, Var kernels, Var bias) {
  const Tensor<T>& x = tape.value(input);
  const Tensor<T>& k = tape.value(kernels);
  const Tensor<T>& b = tape.value(bias);
  if (x.rank() != 3 || x.dim(0) == 0 || x.dim(1) == 0) shape_mismatch("conv2d", x.shape(), "[H,W,C]");
  const std::size_t h = x.dim(0), w = x.dim(1), c = x.dim(2);
  if (k.rank() != 4 || k.dim(0) != 3 || k.dim(1) != 3 || k.dim(2) != c) {
    shape_mismatch("conv2d", k.shape(), "[3,3," + std::to_string(c) + ",Cout]");
  }
  const std::size_t o = k.dim(3);
  if (b.shape() != Shape{o}) shape_mismatch("conv2d bias", b.shape(), "[" + std::to_string(o) + "]");

  // im2col: one row per output pixel, columns ordered (ky, kx, cin) to match
  // the kernel layout.
  const std::size_t cols = 9 * c;
  std::vector<T> patches(h * w * cols, T{0});
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t xx = 0; xx < w; ++xx) {
      T* dst = patches.data() + (y * w + xx) * cols;
      for (int ky = 0; ky < 3; ++ky) {
        const auto iy = static_cast<std::ptrdiff_t>(y) + ky - 1;
        if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(h)) continue;
        for (int kx = 0; kx < 3; ++kx) {
          const auto ix = static_cast<std::ptrdiff_t>(xx) + kx - 1;
          if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(w)) continue;
          const T* src = x.data() + (static_cast<std::size_t>(iy) * w + static_cast<std::size_t>(ix)) * c;
          std::copy(src, src + c, dst + (ky * 3 + kx) * c);
        }
      }
    }
  }

  Tensor<T> out({h, w, o});
  const Eigen::Map<const MatR<T>> p(patches.data(), static_cast<Eigen::Index>(h * w),
                                    static_cast<Eigen::Index>(cols));
  auto y = mat(out, h * w, o);
  y.noalias() = p * mat(k, cols, o);
  y.rowwise() += row(b);

  const bool need = tape.requires_grad(input) || tape.requires_grad(kernels) || tape.requires_grad(bias);
  return tape.push(std::move(out), need,
                   [patches = std::move(patches), input, kernels, bias, h, w, c, o, cols](Tape<T>& t, Var self) {
                     const auto g = mat(t.grad(self), h * w, o);
                     const Eigen::Map<const MatR<T>> p(patches.data(), static_cast<Eigen::Index>(h * w),
                                                       static_cast<Eigen::Index>(cols));
                     if (t.requires_grad(kernels)) {
                       mat(t.grad(kernels), cols, o).noalias() += p.transpose() * g;
                     }
                     if (t.requires_grad(bias)) row(t.grad(bias)) += g.colwise().sum();
                     if (!t.requires_grad(input)) return;
                     const MatR<T> dp = g * mat(t.value(kernels), cols, o).transpose();
                     Tensor<T>& gx = t.grad(input);
                     for (std::size_t y = 0; y < h; ++y) {
                       for (std::size_t xx = 0; xx < w; ++xx) {
                         const T* src = dp.data() + (y * w + xx) * cols;
                         for (int ky = 0; ky < 3; ++ky) {
                           const auto iy = static_cast<std::ptrdiff_t>(y) + ky - 1;
                           if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(h)) continue;
                           for (int kx = 0; kx < 3; ++kx) {
                             const auto ix = static_cast<std::ptrdiff_t>(xx) + kx - 1;
                             if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(w)) continue;
                             T* dst = gx.data() + (static_cast<std::size_t>(iy) * w + static_cast<std::size_t>(ix)) * c;
                             const T* s = src + (ky * 3 + kx) * c;
                             for (std::size_t ch = 0; ch < c; ++ch) dst[ch] += s[ch];
                           }
                         }
                       }
                     }
                   });
}

template <typename T>
Var maxpool2d(Tape<T>& tape, Var input) {
  const Tensor<T>& x = tape.value(input);
  if (x.rank() != 3) shape_mismatch("maxpool2d", x.shape(), "[H,W,C]");
  const std::size_t h = x.dim(0), w = x.dim(1), c = x.dim(2);
  if (h % 2 != 0 || w % 2 != 0) {
    throw TensorError(TensorError::Kind::kOddSpatialExtent,
                      "maxpool2d: odd spatial extent " + shape_string(x.shape()));
  }
  const std::size_t oh = h / 2, ow = w / 2;
  Tensor<T> out({oh, ow, c});
  std::vector<std::uint32_t> argmax(out.size());
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t xx = 0; xx < ow; ++xx) {
      for (std::size_t ch = 0; ch < c; ++ch) {
        std::size_t best = ((2 * y) * w + 2 * xx) * c + ch;
        for (std::size_t dy = 0; dy < 2; ++dy) {
          for (std::size_t dx = 0; dx < 2; ++dx) {
            const std::size_t idx = ((2 * y + dy) * w + 2 * xx + dx) * c + ch;
            if (x[idx] > x[best]) best = idx;
          }
        }
        const std::size_t o = (y * ow + xx) * c + ch;
        out[o] = x[best];
        argmax[o] = static_cast<std::uint32_t>(best);
      }
    }
  }
  return tape.push(std::move(out), tape.requires_grad(input),
                   [argmax = std::move(argmax), input](Tape<T>& t, Var self) {
                     const Tensor<T>& g = t.grad(self);
                     Tensor<T>& gx = t.grad(input);
                     for (std::size_t i = 0; i < argmax.size(); ++i) gx[argmax[i]] += g[i];
                   });
}

template <typename T>
Var dense(Tape<T>& tape, Var input, Var weights, Var bias) {
  const Tensor<T>& x = tape.value(input);
  const Tensor<T>& wt = tape.value(weights);
  const Tensor<T>& b = tape.value(bias);
  if (wt.rank() != 2 || wt.dim(0) != x.size()) {
    shape_mismatch("dense", wt.shape(), "[" + std::to_string(x.size()) + ",m]");
  }
  const std::size_t n = wt.dim(0), m = wt.dim(1);
  if (b.shape() != Shape{m}) shape_mismatch("dense bias", b.shape(), "[" + std::to_string(m) + "]");
  Tensor<T> out({m});
  row(out).noalias() = row(x) * mat(wt, n, m) + row(b);
  const bool need = tape.requires_grad(input) || tape.requires_grad(weights) || tape.requires_grad(bias);
  return tape.push(std::move(out), need, [input, weights, bias, n, m](Tape<T>& t, Var self) {
    const auto g = row(t.grad(self));
    if (t.requires_grad(weights)) {
      mat(t.grad(weights), n, m).noalias() += row(t.value(input)).transpose() * g;
    }
    if (t.requires_grad(bias)) row(t.grad(bias)) += g;
    if (t.requires_grad(input)) row(t.grad(input)).noalias() += g * mat(t.value(weights), n, m).transpose();
  });
}

template <typename T>
Var add(Tape<T>& tape, Var a, Var b) {
  const Tensor<T>& x = tape.value(a);
  const Tensor<T>& y = tape.value(b);
  if (x.shape() != y.shape()) shape_mismatch("add", y.shape(), shape_string(x.shape()));
  Tensor<T> out = x;
  out += y;
  return tape.push(std::move(out), tape.requires_grad(a) || tape.requires_grad(b), [a, b](Tape<T>& t, Var self) {
    const Tensor<T>& g = t.grad(self);
    if (t.requires_grad(a)) t.grad(a) += g;
    if (t.requires_grad(b)) t.grad(b) += g;
  });
}

template <typename T>
Var scale(Tape<T>& tape, Var a, T factor) {
  Tensor<T> out = tape.value(a);
  for (auto& v : out.values()) v *= factor;
  return tape.push(std::move(out), tape.requires_grad(a), [a, factor](Tape<T>& t, Var self) {
    const Tensor<T>& g = t.grad(self);
    Tensor<T>& gx = t.grad(a);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += factor * g[i];
  });
}

template <typename T>
Var sum(Tape<T>& tape, Var a) {
  T total{0};
  for (T v : tape.value(a).values()) total += v;
  return tape.push(Tensor<T>({1}, total), tape.requires_grad(a), [a](Tape<T>& t, Var self) {
    const T g = t.grad(self)[0];
    for (auto& v : t.grad(a).values()) v += g;
  });
}

template <typename T>
Var relu(Tape<T>& tape, Var a) {
  return unary(
      tape, a, "relu", [](T x) { return x > T{0} ? x : T{0}; },
      [](T y) { return y > T{0} ? T{1} : T{0}; });
}

template <typename T>
Var sigmoid(Tape<T>& tape, Var a) {
  return unary(
      tape, a, "sigmoid", [](T x) { return stable_sigmoid(x); }, [](T y) { return y * (T{1} - y); });
}

template <typename T>
Var tanh(Tape<T>& tape, Var a) {
  return unary(
      tape, a, "tanh", [](T x) { return std::tanh(x); }, [](T y) { return T{1} - y * y; });
}

template <typename T>
Var softmax(Tape<T>& tape, Var a) {
  const Tensor<T>& x = tape.value(a);
  require_finite(x, "softmax");
  if (x.empty()) shape_mismatch("softmax", x.shape(), "a non-empty tensor");
  Tensor<T> y(x.shape());
  const T mx = *std::max_element(x.values().begin(), x.values().end());
  T total{0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = std::exp(x[i] - mx);
    total += y[i];
  }
  for (auto& v : y.values()) v /= total;
  return tape.push(std::move(y), tape.requires_grad(a), [a](Tape<T>& t, Var self) {
    const Tensor<T>& out = t.value(self);
    const Tensor<T>& g = t.grad(self);
    T dot{0};
    for (std::size_t i = 0; i < out.size(); ++i) dot += g[i] * out[i];
    Tensor<T>& gx = t.grad(a);
    for (std::size_t i = 0; i < out.size(); ++i) gx[i] += out[i] * (g[i] - dot);
  });
}

template <typename T>
Var dropout(Tape<T>& tape, Var a, double rate, Mode mode, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw TensorError(TensorError::Kind::kInvalidRate, "dropout rate must lie in [0, 1)");
  }
  if (mode == Mode::kInfer || rate == 0.0) return a;
  const Tensor<T>& x = tape.value(a);
  const T keep_scale = static_cast<T>(1.0 / (1.0 - rate));
  std::vector<T> mask(x.size());
  Tensor<T> out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mask[i] = rng.bernoulli(rate) ? T{0} : keep_scale;
    out[i] = x[i] * mask[i];
  }
  return tape.push(std::move(out), tape.requires_grad(a), [a, mask = std::move(mask)](Tape<T>& t, Var self) {
    const Tensor<T>& g = t.grad(self);
    Tensor<T>& gx = t.grad(a);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * mask[i];
  });
}

template <typename T>
Var concat(Tape<T>& tape, std::span<const Var> parts) {
  std::size_t n = 0;
  bool need = false;
  for (Var v : parts) {
    n += tape.value(v).size();
    need = need || tape.requires_grad(v);
  }
  Tensor<T> out({n});
  std::size_t off = 0;
  for (Var v : parts) {
    const Tensor<T>& p = tape.value(v);
    std::copy(p.values().begin(), p.values().end(), out.data() + off);
    off += p.size();
  }
  return tape.push(std::move(out), need, [parts = std::vector<Var>(parts.begin(), parts.end())](Tape<T>& t, Var self) {
    const Tensor<T>& g = t.grad(self);
    std::size_t off = 0;
    for (Var v : parts) {
      const std::size_t len = t.value(v).size();
      if (t.requires_grad(v)) {
        Tensor<T>& gv = t.grad(v);
        for (std::size_t i = 0; i < len; ++i) gv[i] += g[off + i];
      }
      off += len;
    }
  });
}

template <typename T>
Var slice(Tape<T>& tape, Var a, std::size_t offset, std::size_t length) {
  const Tensor<T>& x = tape.value(a);
  if (offset + length > x.size()) {
    shape_mismatch("slice", x.shape(), "at least " + std::to_string(offset + length) + " elements");
  }
  Tensor<T> out({length});
  std::copy(x.data() + offset, x.data() + offset + length, out.data());
  return tape.push(std::move(out), tape.requires_grad(a), [a, offset](Tape<T>& t, Var self) {
    const Tensor<T>& g = t.grad(self);
    Tensor<T>& gx = t.grad(a);
    for (std::size_t i = 0; i < g.size(); ++i) gx[offset + i] += g[i];
  });
}

template <typename T>
Var reshape(Tape<T>& tape, Var a, Shape shape) {
  Tensor<T> out = tape.value(a);
  out.reshape(std::move(shape));
  return tape.push(std::move(out), tape.requires_grad(a), [a](Tape<T>& t, Var self) {
    const Tensor<T>& g = t.grad(self);
    Tensor<T>& gx = t.grad(a);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
  });
}

template <typename T>
Var cross_entropy(Tape<T>& tape, Var probs, std::size_t target) {
  const Tensor<T>& p = tape.value(probs);
  if (target >= p.size()) shape_mismatch("cross_entropy", p.shape(), "target " + std::to_string(target));
  constexpr T kFloor = static_cast<T>(1e-12);
  const T pt = p[target];
  const T loss = -std::log(std::max(pt, kFloor));
  return tape.push(Tensor<T>({1}, loss), tape.requires_grad(probs), [probs, target, kFloor](Tape<T>& t, Var self) {
    const T pt = t.value(probs)[target];
    if (pt > kFloor) t.grad(probs)[target] -= t.grad(self)[0] / pt;
  });
}

template <typename T>
LstmState lstm_step(Tape<T>& tape, Var x, LstmState prev, const LstmWeights& w) {
  const Tensor<T>& xv = tape.value(x);
  const Tensor<T>& hv = tape.value(prev.h);
  const Tensor<T>& cv = tape.value(prev.c);
  const std::size_t in = xv.size();
  const std::size_t n = hv.size();
  if (cv.size() != n) shape_mismatch("lstm_step c", cv.shape(), "[" + std::to_string(n) + "]");
  const Var wx[4] = {w.w_ix, w.w_fx, w.w_ox, w.w_cx};
  const Var wy[4] = {w.w_iy, w.w_fy, w.w_oy, w.w_cy};
  const Var wb[4] = {w.b_i, w.b_f, w.b_o, w.b_c};
  for (int gi = 0; gi < 4; ++gi) {
    if (tape.value(wx[gi]).shape() != Shape{in, n}) {
      shape_mismatch("lstm_step W_*x", tape.value(wx[gi]).shape(), shape_string({in, n}));
    }
    if (tape.value(wy[gi]).shape() != Shape{n, n}) {
      shape_mismatch("lstm_step W_*y", tape.value(wy[gi]).shape(), shape_string({n, n}));
    }
    if (tape.value(wb[gi]).shape() != Shape{n}) {
      shape_mismatch("lstm_step b_*", tape.value(wb[gi]).shape(), shape_string({n}));
    }
  }

  // gates rows: i, f, o, candidate; then tanh(c').
  MatR<T> gates(5, static_cast<Eigen::Index>(n));
  for (int gi = 0; gi < 4; ++gi) {
    gates.row(gi).noalias() = row(xv) * mat(tape.value(wx[gi]), in, n);
    gates.row(gi).noalias() += row(hv) * mat(tape.value(wy[gi]), n, n);
    gates.row(gi) += row(tape.value(wb[gi]));
  }
  for (Eigen::Index j = 0; j < gates.cols(); ++j) {
    for (int gi = 0; gi < 3; ++gi) gates(gi, j) = stable_sigmoid(gates(gi, j));
    gates(3, j) = std::tanh(gates(3, j));
  }
  Tensor<T> state({2 * n});
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const T c_new = gates(1, jj) * cv[j] + gates(0, jj) * gates(3, jj);
    gates(4, jj) = std::tanh(c_new);
    state[j] = gates(2, jj) * gates(4, jj);
    state[n + j] = c_new;
  }

  bool need = tape.requires_grad(x) || tape.requires_grad(prev.h) || tape.requires_grad(prev.c);
  for (int gi = 0; gi < 4; ++gi) {
    need = need || tape.requires_grad(wx[gi]) || tape.requires_grad(wy[gi]) || tape.requires_grad(wb[gi]);
  }
  const LstmWeights weights = w;
  const Var joined = tape.push(
      std::move(state), need,
      [x, prev, weights, gates = std::move(gates), in, n](Tape<T>& t, Var self) {
        const Tensor<T>& g = t.grad(self);
        const Tensor<T>& cprev = t.value(prev.c);
        // Pre-activation gradients, rows i, f, o, candidate.
        MatR<T> da(4, static_cast<Eigen::Index>(n));
        RowVec<T> dc_prev(static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) {
          const auto jj = static_cast<Eigen::Index>(j);
          const T i = gates(0, jj), f = gates(1, jj), o = gates(2, jj), cand = gates(3, jj);
          const T tc = gates(4, jj);
          const T dh = g[j];
          const T dc = g[n + j] + dh * o * (T{1} - tc * tc);
          da(0, jj) = dc * cand * i * (T{1} - i);
          da(1, jj) = dc * cprev[j] * f * (T{1} - f);
          da(2, jj) = dh * tc * o * (T{1} - o);
          da(3, jj) = dc * i * (T{1} - cand * cand);
          dc_prev(jj) = dc * f;
        }
        const Var wx[4] = {weights.w_ix, weights.w_fx, weights.w_ox, weights.w_cx};
        const Var wy[4] = {weights.w_iy, weights.w_fy, weights.w_oy, weights.w_cy};
        const Var wb[4] = {weights.b_i, weights.b_f, weights.b_o, weights.b_c};
        const auto xr = row(t.value(x));
        const auto hr = row(t.value(prev.h));
        for (int gi = 0; gi < 4; ++gi) {
          const auto d = da.row(gi);
          if (t.requires_grad(wx[gi])) mat(t.grad(wx[gi]), in, n).noalias() += xr.transpose() * d;
          if (t.requires_grad(wy[gi])) mat(t.grad(wy[gi]), n, n).noalias() += hr.transpose() * d;
          if (t.requires_grad(wb[gi])) row(t.grad(wb[gi])) += d;
          if (t.requires_grad(x)) row(t.grad(x)).noalias() += d * mat(t.value(wx[gi]), in, n).transpose();
          if (t.requires_grad(prev.h)) {
            row(t.grad(prev.h)).noalias() += d * mat(t.value(wy[gi]), n, n).transpose();
          }
        }
        if (t.requires_grad(prev.c)) row(t.grad(prev.c)) += dc_prev;
      });
  return {slice(tape, joined, 0, n), slice(tape, joined, n, n)};
}

#define GUICODE_INSTANTIATE_OPS(T)                                                  \
  template Var conv2d<T>(Tape<T>&, Var, Var, Var);                                  \
  template Var maxpool2d<T>(Tape<T>&, Var);                                         \
  template Var dense<T>(Tape<T>&, Var, Var, Var);                                   \
  template Var add<T>(Tape<T>&, Var, Var);                                          \
  template Var scale<T>(Tape<T>&, Var, T);                                          \
  template Var sum<T>(Tape<T>&, Var);                                               \
  template Var relu<T>(Tape<T>&, Var);                                              \
  template Var sigmoid<T>(Tape<T>&, Var);                                           \
  template Var tanh<T>(Tape<T>&, Var);                                              \
  template Var softmax<T>(Tape<T>&, Var);                                           \
  template Var dropout<T>(Tape<T>&, Var, double, Mode, Rng&);                       \
  template Var concat<T>(Tape<T>&, std::span<const Var>);                           \
  template Var slice<T>(Tape<T>&, Var, std::size_t, std::size_t);                   \
  template Var reshape<T>(Tape<T>&, Var, Shape);                                    \
  template Var cross_entropy<T>(Tape<T>&, Var, std::size_t);                        \
  template LstmState lstm_step<T>(Tape<T>&, Var, LstmState, const LstmWeights&);

GUICODE_INSTANTIATE_OPS(float)
GUICODE_INSTANTIATE_OPS(double)

}  // namespace guicode::nn
