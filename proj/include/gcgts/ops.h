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

// Differentiable operations on tape variables. Every op records exactly one
// node. Shape errors throw DimensionError naming the offending shapes.

#ifndef GCGTS_OPS_H_
#define GCGTS_OPS_H_

#include <span>
#include <vector>

#include "gcgts/tape.h"

namespace gcgts::num {

inline constexpr double kProbClampEps = 1e-12;

// a[..., k] x b[k, n] -> [..., n]. For rank-2 `a` this is the ordinary
// matrix product; higher ranks apply `b` to every row of the last axis.
template <typename T>
Var<T> MatMul(const Var<T>& a, const Var<T>& b);

// Elementwise sum. `b` must have the shape of `a` or of a suffix of it
// (a bias row broadcast over leading axes).
template <typename T>
Var<T> Add(const Var<T>& a, const Var<T>& b);

// Elementwise product of equal shapes.
template <typename T>
Var<T> Mul(const Var<T>& a, const Var<T>& b);

template <typename T>
Var<T> Scale(const Var<T>& a, T factor);

// max(x, 0); the subgradient at 0 is 0.
template <typename T>
Var<T> Relu(const Var<T>& a);

// Rows [begin, end) of a matrix.
template <typename T>
Var<T> SliceRows(const Var<T>& a, std::size_t begin, std::size_t end);

// Concatenation along the last axis; all leading axes must agree.
template <typename T>
Var<T> Concat(const std::vector<Var<T>>& parts);

// Maximum along `axis` (axis removed). Ties route the gradient to the first
// maximal index.
template <typename T>
Var<T> MaxOverAxis(const Var<T>& a, std::size_t axis);

// Sum of all elements -> scalar.
template <typename T>
Var<T> Sum(const Var<T>& a);

// Sum over the last axis: [..., d] -> [...].
template <typename T>
Var<T> SumLastAxis(const Var<T>& a);

// Softmax over the last axis.
template <typename T>
Var<T> Softmax(const Var<T>& logits);

// Softmax over the last axis restricted to entries with mask == 1; masked-out
// entries are exactly 0, and a fully masked row is all zeros. `mask` has the
// shape of `logits` and holds 0/1.
template <typename T>
Var<T> MaskedSoftmax(const Var<T>& logits, const Tensor<T>& mask);

// Sum over rows r with targets[r] >= 0 of -log(max(probs[r, targets[r]], eps)).
// `probs` is [..., C] with one target per row (leading axes flattened); rows
// with a negative target are skipped. Targeted rows must sum to 1 +- 1e-5.
template <typename T>
Var<T> CrossEntropy(const Var<T>& probs, std::span<const int> targets,
                    double clamp_eps = kProbClampEps);

// Row gather: table[V, d], ids -> out_shape + [d].
template <typename T>
Var<T> Embedding(const Var<T>& table, std::span<const int> ids,
                 const Shape& out_shape);

// x[n, d] -> [n, n, d] with cell (i, j) = x[i].
template <typename T>
Var<T> ExpandRows(const Var<T>& x);

// x[n, d] -> [n, n, d] with cell (i, j) = x[j].
template <typename T>
Var<T> ExpandCols(const Var<T>& x);

// Grid shift with zero fill: out[i, j] = x[i, j + offset] (axis 1) or
// x[i + offset, j] (axis 0) when in range, else 0. x is [n, m, d].
template <typename T>
Var<T> Shift(const Var<T>& x, std::size_t axis, std::size_t offset);

// out[i] = sum_j weights[i, j] * values[i, j]; weights [n, n], values
// [n, n, d].
template <typename T>
Var<T> Attend(const Var<T>& weights, const Var<T>& values);

// Row pooling over the symmetric completion of an upper-triangular grid:
// out[i, c] = max over k with mask[min(i,k), max(i,k)] == 1 of
// p[min(i,k), max(i,k), c]; 0 when no such k exists. p is [n, n, C],
// mask [n, n].
template <typename T>
Var<T> SymmetricMaxPool(const Var<T>& p, const Tensor<T>& mask);

}  // namespace gcgts::num

#endif  // GCGTS_OPS_H_
