// Copyright 2026 The GCGTS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gcgts/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gcgts::num {
namespace {

template <typename T>
Tape<T>& SameTape(const Var<T>& a, const Var<T>& b) {
  if (!a.valid() || a.tape() != b.tape()) {
    throw ContractError("operands live on different tapes");
  }
  return *a.tape();
}

std::string Pair(const Shape& a, const Shape& b) {
  return ShapeString(a) + " and " + ShapeString(b);
}

bool IsSuffix(const Shape& whole, const Shape& part) {
  if (part.size() > whole.size()) return false;
  return std::equal(part.rbegin(), part.rend(), whole.rbegin());
}

template <typename T>
void RequireGrid(const Shape& s, const char* op) {
  if (s.size() != 3 || s[0] != s[1]) {
    throw DimensionError(std::string(op) + ": expected an [n, n, d] grid, got " +
                         ShapeString(s));
  }
}

}  // namespace

template <typename T>
Var<T> MatMul(const Var<T>& a, const Var<T>& b) {
  Tape<T>& tape = SameTape(a, b);
  const Shape& sa = a.shape();
  const Shape& sb = b.shape();
  if (sa.empty() || sb.size() != 2 || sa.back() != sb[0]) {
    throw DimensionError("matmul: inner dimensions disagree for " +
                         Pair(sa, sb));
  }
  const std::size_t k = sb[0], n = sb[1], rows = a.value().size() / std::max<std::size_t>(k, 1);
  Shape out_shape = sa;
  out_shape.back() = n;
  Tensor<T> out(out_shape);
  {
    const T* av = a.value().data().data();
    const T* bv = b.value().data().data();
    T* ov = out.data().data();
    for (std::size_t r = 0; r < rows; ++r) {
      T* orow = ov + r * n;
      for (std::size_t kk = 0; kk < k; ++kk) {
        const T x = av[r * k + kk];
        if (x == T(0)) continue;
        const T* brow = bv + kk * n;
        for (std::size_t j = 0; j < n; ++j) orow[j] += x * brow[j];
      }
    }
  }
  const std::size_t ia = a.id(), ib = b.id();
  return tape.Record(std::move(out), {ia, ib},
                     [ia, ib, rows, k, n](Tape<T>& t, std::size_t self) {
    const T* g = t.grad(self).data().data();
    if (t.requires_grad(ia)) {
      // ga[r, :] += sum_j g[r, j] * b[:, j], as row updates over b^T so the
      // inner loop vectorizes.
      T* ga = t.MutableGrad(ia).data().data();
      const T* bv = t.value(ib).data().data();
      std::vector<T> bt(k * n);
      for (std::size_t kk = 0; kk < k; ++kk) {
        for (std::size_t j = 0; j < n; ++j) bt[j * k + kk] = bv[kk * n + j];
      }
      for (std::size_t r = 0; r < rows; ++r) {
        const T* grow = g + r * n;
        T* garow = ga + r * k;
        for (std::size_t j = 0; j < n; ++j) {
          const T x = grow[j];
          if (x == T(0)) continue;
          const T* btrow = bt.data() + j * k;
          for (std::size_t kk = 0; kk < k; ++kk) garow[kk] += x * btrow[kk];
        }
      }
    }
    if (t.requires_grad(ib)) {
      T* gb = t.MutableGrad(ib).data().data();
      const T* av = t.value(ia).data().data();
      for (std::size_t r = 0; r < rows; ++r) {
        const T* grow = g + r * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
          const T x = av[r * k + kk];
          if (x == T(0)) continue;
          T* gbrow = gb + kk * n;
          for (std::size_t j = 0; j < n; ++j) gbrow[j] += x * grow[j];
        }
      }
    }
  });
}

template <typename T>
Var<T> Add(const Var<T>& a, const Var<T>& b) {
  Tape<T>& tape = SameTape(a, b);
  if (!IsSuffix(a.shape(), b.shape())) {
    throw DimensionError("add: cannot broadcast " + Pair(a.shape(), b.shape()));
  }
  const std::size_t period = std::max<std::size_t>(b.value().size(), 1);
  Tensor<T> out = a.value();
  {
    auto o = out.data();
    auto bv = b.value().data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += bv[i % period];
  }
  const std::size_t ia = a.id(), ib = b.id();
  return tape.Record(std::move(out), {ia, ib},
                     [ia, ib, period](Tape<T>& t, std::size_t self) {
    auto g = t.grad(self).data();
    if (t.requires_grad(ia)) {
      auto ga = t.MutableGrad(ia).data();
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    }
    if (t.requires_grad(ib)) {
      auto gb = t.MutableGrad(ib).data();
      for (std::size_t i = 0; i < g.size(); ++i) gb[i % period] += g[i];
    }
  });
}

template <typename T>
Var<T> Mul(const Var<T>& a, const Var<T>& b) {
  Tape<T>& tape = SameTape(a, b);
  if (a.shape() != b.shape()) {
    throw DimensionError("mul: shapes differ: " + Pair(a.shape(), b.shape()));
  }
  Tensor<T> out = a.value();
  {
    auto o = out.data();
    auto bv = b.value().data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] *= bv[i];
  }
  const std::size_t ia = a.id(), ib = b.id();
  return tape.Record(std::move(out), {ia, ib},
                     [ia, ib](Tape<T>& t, std::size_t self) {
    auto g = t.grad(self).data();
    if (t.requires_grad(ia)) {
      auto ga = t.MutableGrad(ia).data();
      auto bv = t.value(ib).data();
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
    }
    if (t.requires_grad(ib)) {
      auto gb = t.MutableGrad(ib).data();
      auto av = t.value(ia).data();
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
    }
  });
}

template <typename T>
Var<T> Scale(const Var<T>& a, T factor) {
  Tensor<T> out = a.value();
  for (T& v : out.data()) v *= factor;
  const std::size_t ia = a.id();
  return a.tape()->Record(std::move(out), {ia},
                          [ia, factor](Tape<T>& t, std::size_t self) {
    auto g = t.grad(self).data();
    auto ga = t.MutableGrad(ia).data();
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += factor * g[i];
  });
}

template <typename T>
Var<T> Relu(const Var<T>& a) {
  Tensor<T> out = a.value();
  for (T& v : out.data()) v = v > T(0) ? v : T(0);
  const std::size_t ia = a.id();
  return a.tape()->Record(std::move(out), {ia},
                          [ia](Tape<T>& t, std::size_t self) {
    auto g = t.grad(self).data();
    auto x = t.value(ia).data();
    auto ga = t.MutableGrad(ia).data();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (x[i] > T(0)) ga[i] += g[i];
    }
  });
}

template <typename T>
Var<T> SliceRows(const Var<T>& a, std::size_t begin, std::size_t end) {
  const Shape& sa = a.shape();
  if (sa.size() != 2 || begin > end || end > sa[0]) {
    throw DimensionError("slice_rows: rows [" + std::to_string(begin) + ", " +
                         std::to_string(end) + ") of " + ShapeString(sa));
  }
  const std::size_t cols = sa[1];
  const auto src = a.value().data();
  Tensor<T> out(Shape{end - begin, cols},
                std::vector<T>(src.begin() + begin * cols,
                               src.begin() + end * cols));
  const std::size_t ia = a.id();
  return a.tape()->Record(std::move(out), {ia},
                          [ia, begin, cols](Tape<T>& t, std::size_t self) {
    auto g = t.grad(self).data();
    auto ga = t.MutableGrad(ia).data();
    for (std::size_t i = 0; i < g.size(); ++i) ga[begin * cols + i] += g[i];
  });
}

template <typename T>
Var<T> Concat(const std::vector<Var<T>>& parts) {
  if (parts.empty()) throw DimensionError("concat: no inputs");
  Tape<T>& tape = *parts[0].tape();
  const Shape& first = parts[0].shape();
  if (first.empty()) throw DimensionError("concat: scalar input");
  Shape lead(first.begin(), first.end() - 1);
  std::vector<std::size_t> widths;
  std::vector<std::size_t> ids;
  std::size_t total = 0;
  for (const auto& p : parts) {
    SameTape(parts[0], p);
    const Shape& s = p.shape();
    if (s.size() != first.size() ||
        !std::equal(lead.begin(), lead.end(), s.begin(), s.end() - 1)) {
      throw DimensionError("concat: leading dimensions differ: " +
                           Pair(first, s));
    }
    widths.push_back(s.back());
    ids.push_back(p.id());
    total += s.back();
  }
  const std::size_t rows = NumElements(lead);
  Shape out_shape = lead;
  out_shape.push_back(total);
  Tensor<T> out(out_shape);
  {
    T* o = out.data().data();
    std::size_t off = 0;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const T* src = parts[p].value().data().data();
      const std::size_t w = widths[p];
      for (std::size_t r = 0; r < rows; ++r) {
        std::copy(src + r * w, src + (r + 1) * w, o + r * total + off);
      }
      off += w;
    }
  }
  return tape.Record(std::move(out), ids,
                     [ids, widths, rows, total](Tape<T>& t, std::size_t self) {
    const T* g = t.grad(self).data().data();
    std::size_t off = 0;
    for (std::size_t p = 0; p < ids.size(); ++p) {
      const std::size_t w = widths[p];
      if (t.requires_grad(ids[p])) {
        T* gp = t.MutableGrad(ids[p]).data().data();
        for (std::size_t r = 0; r < rows; ++r) {
          const T* src = g + r * total + off;
          T* dst = gp + r * w;
          for (std::size_t i = 0; i < w; ++i) dst[i] += src[i];
        }
      }
      off += w;
    }
  });
}

template <typename T>
Var<T> MaxOverAxis(const Var<T>& a, std::size_t axis) {
  const Shape& s = a.shape();
  if (axis >= s.size() || s[axis] == 0) {
    throw DimensionError("max: axis " + std::to_string(axis) +
                         " invalid for shape " + ShapeString(s));
  }
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= s[i];
  for (std::size_t i = axis + 1; i < s.size(); ++i) inner *= s[i];
  const std::size_t len = s[axis];
  Shape out_shape;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != axis) out_shape.push_back(s[i]);
  }
  Tensor<T> out(out_shape);
  std::vector<std::size_t> argmax(outer * inner);
  const T* x = a.value().data().data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      std::size_t best = o * len * inner + in;
      for (std::size_t l = 1; l < len; ++l) {
        const std::size_t idx = (o * len + l) * inner + in;
        if (x[idx] > x[best]) best = idx;
      }
      out[o * inner + in] = x[best];
      argmax[o * inner + in] = best;
    }
  }
  const std::size_t ia = a.id();
  return a.tape()->Record(std::move(out), {ia},
                          [ia, argmax = std::move(argmax)](Tape<T>& t,
                                                           std::size_t self) {
    auto g = t.grad(self).data();
    auto ga = t.MutableGrad(ia).data();
    for (std::size_t i = 0; i < g.size(); ++i) ga[argmax[i]] += g[i];
  });
}

template <typename T>
Var<T> Sum(const Var<T>& a) {
  T acc = 0;
  for (T v : a.value().data()) acc += v;
  const std::size_t ia = a.id();
  return a.tape()->Record(Tensor<T>::Scalar(acc), {ia},
                          [ia](Tape<T>& t, std::size_t self) {
    const T g = t.grad(self)[0];
    for (T& v : t.MutableGrad(ia).data()) v += g;
  });
}

template <typename T>
Var<T> SumLastAxis(const Var<T>& a) {
  const Shape& s = a.shape();
  if (s.empty()) throw DimensionError("sum_last: scalar input");
  const std::size_t d = s.back();
  Shape out_shape(s.begin(), s.end() - 1);
  Tensor<T> out(out_shape);
  const T* x = a.value().data().data();
  for (std::size_t r = 0; r < out.size(); ++r) {
    T acc = 0;
    for (std::size_t i = 0; i < d; ++i) acc += x[r * d + i];
    out[r] = acc;
  }
  const std::size_t ia = a.id();
  return a.tape()->Record(std::move(out), {ia},
                          [ia, d](Tape<T>& t, std::size_t self) {
    auto g = t.grad(self).data();
    auto ga = t.MutableGrad(ia).data();
    for (std::size_t r = 0; r < g.size(); ++r) {
      for (std::size_t i = 0; i < d; ++i) ga[r * d + i] += g[r];
    }
  });
}

namespace {

// Shared by Softmax and MaskedSoftmax: y = softmax, g_x = y * (g - <y, g>).
template <typename T>
Var<T> SoftmaxImpl(const Var<T>& logits, const T* mask) {
  const Shape& s = logits.shape();
  if (s.empty()) throw DimensionError("softmax: scalar input");
  const std::size_t c = s.back();
  const std::size_t rows = c == 0 ? 0 : logits.value().size() / c;
  Tensor<T> out(s);
  const T* x = logits.value().data().data();
  T* y = out.data().data();
  for (std::size_t r = 0; r < rows; ++r) {
    const T* xr = x + r * c;
    T* yr = y + r * c;
    const T* mr = mask ? mask + r * c : nullptr;
    T top = -std::numeric_limits<T>::infinity();
    for (std::size_t i = 0; i < c; ++i) {
      if (!mr || mr[i] != T(0)) top = std::max(top, xr[i]);
    }
    if (top == -std::numeric_limits<T>::infinity()) continue;  // all masked
    T z = 0;
    for (std::size_t i = 0; i < c; ++i) {
      if (mr && mr[i] == T(0)) continue;
      yr[i] = std::exp(xr[i] - top);
      z += yr[i];
    }
    for (std::size_t i = 0; i < c; ++i) yr[i] /= z;
  }
  const std::size_t ia = logits.id();
  return logits.tape()->Record(std::move(out), {ia},
                               [ia, rows, c](Tape<T>& t, std::size_t self) {
    const T* g = t.grad(self).data().data();
    const T* y = t.value(self).data().data();
    T* gx = t.MutableGrad(ia).data().data();
    for (std::size_t r = 0; r < rows; ++r) {
      T dot = 0;
      for (std::size_t i = 0; i < c; ++i) dot += y[r * c + i] * g[r * c + i];
      for (std::size_t i = 0; i < c; ++i) {
        gx[r * c + i] += y[r * c + i] * (g[r * c + i] - dot);
      }
    }
  });
}

}  // namespace

template <typename T>
Var<T> Softmax(const Var<T>& logits) {
  return SoftmaxImpl<T>(logits, nullptr);
}

template <typename T>
Var<T> MaskedSoftmax(const Var<T>& logits, const Tensor<T>& mask) {
  if (mask.shape() != logits.shape()) {
    throw DimensionError("masked_softmax: mask shape differs: " +
                         Pair(logits.shape(), mask.shape()));
  }
  return SoftmaxImpl<T>(logits, mask.data().data());
}

template <typename T>
Var<T> CrossEntropy(const Var<T>& probs, std::span<const int> targets,
                    double clamp_eps) {
  const Shape& s = probs.shape();
  if (s.empty()) throw DimensionError("cross_entropy: scalar input");
  const std::size_t c = s.back();
  const std::size_t rows = c == 0 ? 0 : probs.value().size() / c;
  if (targets.size() != rows) {
    throw DimensionError("cross_entropy: " + std::to_string(targets.size()) +
                         " targets for probabilities of shape " +
                         ShapeString(s));
  }
  const T* p = probs.value().data().data();
  std::vector<std::size_t> picked;  // flat indices of targeted entries
  T loss = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const int target = targets[r];
    if (target < 0) continue;
    if (static_cast<std::size_t>(target) >= c) {
      throw IndexError("cross_entropy: target " + std::to_string(target) +
                       " out of range for " + std::to_string(c) + " classes");
    }
    double row_sum = 0;
    for (std::size_t i = 0; i < c; ++i) row_sum += p[r * c + i];
    if (std::abs(row_sum - 1.0) > 1e-5) {
      throw ContractError("cross_entropy: row " + std::to_string(r) +
                          " sums to " + std::to_string(row_sum));
    }
    const std::size_t idx = r * c + static_cast<std::size_t>(target);
    loss -= static_cast<T>(std::log(std::max<double>(p[idx], clamp_eps)));
    picked.push_back(idx);
  }
  const std::size_t ia = probs.id();
  const T eps = static_cast<T>(clamp_eps);
  return probs.tape()->Record(
      Tensor<T>::Scalar(loss), {ia},
      [ia, eps, picked = std::move(picked)](Tape<T>& t, std::size_t self) {
        const T g = t.grad(self)[0];
        auto pv = t.value(ia).data();
        auto gp = t.MutableGrad(ia).data();
        for (std::size_t idx : picked) {
          if (pv[idx] > eps) gp[idx] -= g / pv[idx];
        }
      });
}

template <typename T>
Var<T> Embedding(const Var<T>& table, std::span<const int> ids,
                 const Shape& out_shape) {
  const Shape& s = table.shape();
  if (s.size() != 2) {
    throw DimensionError("embedding: table must be [V, d], got " +
                         ShapeString(s));
  }
  if (NumElements(out_shape) != ids.size()) {
    throw DimensionError("embedding: " + std::to_string(ids.size()) +
                         " ids for output shape " + ShapeString(out_shape));
  }
  const std::size_t vocab = s[0], d = s[1];
  Shape shape = out_shape;
  shape.push_back(d);
  Tensor<T> out(shape);
  std::vector<std::size_t> rows(ids.size());
  const T* tv = table.value().data().data();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || static_cast<std::size_t>(ids[i]) >= vocab) {
      throw IndexError("embedding: id " + std::to_string(ids[i]) +
                       " outside vocabulary of size " + std::to_string(vocab));
    }
    rows[i] = static_cast<std::size_t>(ids[i]);
    std::copy(tv + rows[i] * d, tv + (rows[i] + 1) * d, out.data().data() + i * d);
  }
  const std::size_t ia = table.id();
  return table.tape()->Record(
      std::move(out), {ia},
      [ia, d, rows = std::move(rows)](Tape<T>& t, std::size_t self) {
        const T* g = t.grad(self).data().data();
        T* gt = t.MutableGrad(ia).data().data();
        for (std::size_t i = 0; i < rows.size(); ++i) {
          T* dst = gt + rows[i] * d;
          for (std::size_t k = 0; k < d; ++k) dst[k] += g[i * d + k];
        }
      });
}

namespace {

template <typename T>
Var<T> Expand(const Var<T>& x, bool by_row) {
  const Shape& s = x.shape();
  if (s.size() != 2) {
    throw DimensionError("expand: expected [n, d], got " + ShapeString(s));
  }
  const std::size_t n = s[0], d = s[1];
  Tensor<T> out(Shape{n, n, d});
  const T* xv = x.value().data().data();
  T* o = out.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const T* src = xv + (by_row ? i : j) * d;
      std::copy(src, src + d, o + (i * n + j) * d);
    }
  }
  const std::size_t ia = x.id();
  return x.tape()->Record(std::move(out), {ia},
                          [ia, n, d, by_row](Tape<T>& t, std::size_t self) {
    const T* g = t.grad(self).data().data();
    T* gx = t.MutableGrad(ia).data().data();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        T* dst = gx + (by_row ? i : j) * d;
        const T* src = g + (i * n + j) * d;
        for (std::size_t k = 0; k < d; ++k) dst[k] += src[k];
      }
    }
  });
}

}  // namespace

template <typename T>
Var<T> ExpandRows(const Var<T>& x) {
  return Expand(x, true);
}

template <typename T>
Var<T> ExpandCols(const Var<T>& x) {
  return Expand(x, false);
}

template <typename T>
Var<T> Shift(const Var<T>& x, std::size_t axis, std::size_t offset) {
  const Shape& s = x.shape();
  if (s.size() != 3 || axis > 1) {
    throw DimensionError("shift: expected an [n, m, d] grid and axis 0/1, got " +
                         ShapeString(s));
  }
  const std::size_t rows = s[0], cols = s[1], d = s[2];
  Tensor<T> out(s);
  const T* xv = x.value().data().data();
  T* o = out.data().data();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t si = axis == 0 ? i + offset : i;
      const std::size_t sj = axis == 1 ? j + offset : j;
      if (si >= rows || sj >= cols) continue;
      const T* src = xv + (si * cols + sj) * d;
      std::copy(src, src + d, o + (i * cols + j) * d);
    }
  }
  const std::size_t ia = x.id();
  return x.tape()->Record(
      std::move(out), {ia},
      [ia, rows, cols, d, axis, offset](Tape<T>& t, std::size_t self) {
        const T* g = t.grad(self).data().data();
        T* gx = t.MutableGrad(ia).data().data();
        for (std::size_t i = 0; i < rows; ++i) {
          for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t si = axis == 0 ? i + offset : i;
            const std::size_t sj = axis == 1 ? j + offset : j;
            if (si >= rows || sj >= cols) continue;
            T* dst = gx + (si * cols + sj) * d;
            const T* src = g + (i * cols + j) * d;
            for (std::size_t k = 0; k < d; ++k) dst[k] += src[k];
          }
        }
      });
}

template <typename T>
Var<T> Attend(const Var<T>& weights, const Var<T>& values) {
  Tape<T>& tape = SameTape(weights, values);
  const Shape& sw = weights.shape();
  const Shape& sv = values.shape();
  if (sw.size() != 2 || sv.size() != 3 || sv[0] != sw[0] || sv[1] != sw[1]) {
    throw DimensionError("attend: weights/values disagree: " + Pair(sw, sv));
  }
  const std::size_t n = sw[0], m = sw[1], d = sv[2];
  Tensor<T> out(Shape{n, d});
  const T* w = weights.value().data().data();
  const T* v = values.value().data().data();
  T* o = out.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const T a = w[i * m + j];
      if (a == T(0)) continue;
      const T* vr = v + (i * m + j) * d;
      for (std::size_t k = 0; k < d; ++k) o[i * d + k] += a * vr[k];
    }
  }
  const std::size_t iw = weights.id(), iv = values.id();
  return tape.Record(std::move(out), {iw, iv},
                     [iw, iv, n, m, d](Tape<T>& t, std::size_t self) {
    const T* g = t.grad(self).data().data();
    if (t.requires_grad(iw)) {
      const T* v = t.value(iv).data().data();
      T* gw = t.MutableGrad(iw).data().data();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const T* vr = v + (i * m + j) * d;
          T acc = 0;
          for (std::size_t k = 0; k < d; ++k) acc += g[i * d + k] * vr[k];
          gw[i * m + j] += acc;
        }
      }
    }
    if (t.requires_grad(iv)) {
      const T* w = t.value(iw).data().data();
      T* gv = t.MutableGrad(iv).data().data();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const T a = w[i * m + j];
          T* dst = gv + (i * m + j) * d;
          for (std::size_t k = 0; k < d; ++k) dst[k] += a * g[i * d + k];
        }
      }
    }
  });
}

template <typename T>
Var<T> SymmetricMaxPool(const Var<T>& p, const Tensor<T>& mask) {
  const Shape& s = p.shape();
  RequireGrid<T>(s, "symmetric_max_pool");
  const std::size_t n = s[0], c = s[2];
  if (mask.shape() != Shape{n, n}) {
    throw DimensionError("symmetric_max_pool: mask shape differs: " +
                         Pair(s, mask.shape()));
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  Tensor<T> out(Shape{n, c});
  std::vector<std::size_t> argmax(n * c, kNone);
  const T* pv = p.value().data().data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t a = std::min(i, k), b = std::max(i, k);
      if (mask[a * n + b] == T(0)) continue;
      for (std::size_t ch = 0; ch < c; ++ch) {
        const std::size_t idx = (a * n + b) * c + ch;
        std::size_t& best = argmax[i * c + ch];
        if (best == kNone || pv[idx] > pv[best]) best = idx;
      }
    }
    for (std::size_t ch = 0; ch < c; ++ch) {
      const std::size_t best = argmax[i * c + ch];
      out[i * c + ch] = best == kNone ? T(0) : pv[best];
    }
  }
  const std::size_t ia = p.id();
  return p.tape()->Record(std::move(out), {ia},
                          [ia, argmax = std::move(argmax)](Tape<T>& t,
                                                           std::size_t self) {
    auto g = t.grad(self).data();
    auto gp = t.MutableGrad(ia).data();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (argmax[i] != kNone) gp[argmax[i]] += g[i];
    }
  });
}

#define GCGTS_INSTANTIATE_OPS(T)                                              \
  template Var<T> MatMul(const Var<T>&, const Var<T>&);                       \
  template Var<T> Add(const Var<T>&, const Var<T>&);                          \
  template Var<T> Mul(const Var<T>&, const Var<T>&);                          \
  template Var<T> Scale(const Var<T>&, T);                                    \
  template Var<T> Relu(const Var<T>&);                                        \
  template Var<T> SliceRows(const Var<T>&, std::size_t, std::size_t);        \
  template Var<T> Concat(const std::vector<Var<T>>&);                         \
  template Var<T> MaxOverAxis(const Var<T>&, std::size_t);                    \
  template Var<T> Sum(const Var<T>&);                                         \
  template Var<T> SumLastAxis(const Var<T>&);                                 \
  template Var<T> Softmax(const Var<T>&);                                     \
  template Var<T> MaskedSoftmax(const Var<T>&, const Tensor<T>&);             \
  template Var<T> CrossEntropy(const Var<T>&, std::span<const int>, double);  \
  template Var<T> Embedding(const Var<T>&, std::span<const int>,              \
                            const Shape&);                                    \
  template Var<T> ExpandRows(const Var<T>&);                                  \
  template Var<T> ExpandCols(const Var<T>&);                                  \
  template Var<T> Shift(const Var<T>&, std::size_t, std::size_t);             \
  template Var<T> Attend(const Var<T>&, const Var<T>&);                       \
  template Var<T> SymmetricMaxPool(const Var<T>&, const Tensor<T>&);

GCGTS_INSTANTIATE_OPS(float)
GCGTS_INSTANTIATE_OPS(double)

#undef GCGTS_INSTANTIATE_OPS

}  // namespace gcgts::num
