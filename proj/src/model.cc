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

#include "gcgts/model.h"

#include "gcgts/errors.h"
#include "gcgts/ops.h"

namespace gcgts {
namespace {

using num::Init;
using num::Shape;
using num::Tensor;
using num::Var;

std::size_t Z(int v) { return static_cast<std::size_t>(v); }

// W (a_i || b_j) + bias for every cell (i, j), as row and column products.
template <typename T>
Var<T> PairProject(const Var<T>& a, const Var<T>& b, const Var<T>& w,
                   const Var<T>& bias) {
  const std::size_t da = a.shape()[1], db = b.shape()[1];
  auto rows = num::ExpandRows(num::MatMul(a, num::SliceRows(w, 0, da)));
  auto cols = num::ExpandCols(num::MatMul(b, num::SliceRows(w, da, da + db)));
  return num::Add(num::Add(rows, cols), bias);
}

std::string Kernel(const char* axis, int k, const char* part) {
  return std::string("ic.") + axis + std::to_string(k) + "." + part;
}

}  // namespace

template <typename T>
GridModel<T>::GridModel(ModelConfig config, Vocabs vocabs, std::uint64_t seed)
    : config_(std::move(config)), vocabs_(std::move(vocabs)), params_(seed) {
  config_.Validate();
  const std::size_t d_h = Z(config_.d_h), d_g = Z(config_.d_g),
                    d_z = Z(config_.d_z), c = Z(kLabelCount);
  if (config_.encoder == EncoderKind::kTrainable) {
    params_.Add("encoder.char_embed", {Z(vocabs_.chars.size()), d_h},
                Init::kNormal);
  }
  if (config_.use_lagcn) {
    AddLagcnParams(params_, config_.lagcn_dims(), vocabs_.rel.size(),
                   vocabs_.pos.size());
  }
  if (config_.use_uc) {
    params_.Add("uc.row", {d_h, d_h}, Init::kGlorot);
    params_.Add("uc.col", {d_h, d_h}, Init::kGlorot);
    params_.Add("uc.grid.w", {2 * d_h, d_g}, Init::kGlorot);
    params_.Add("uc.grid.b", {d_g}, Init::kZeros);
  } else {
    params_.Add("pair.w", {2 * d_h, d_g}, Init::kGlorot);
    params_.Add("pair.b", {d_g}, Init::kZeros);
  }
  if (config_.use_ic) {
    for (const char* axis : {"row", "col"}) {
      for (int k : config_.kernels) {
        params_.Add(Kernel(axis, k, "w"), {Z(k) * d_g, d_g}, Init::kGlorot);
        params_.Add(Kernel(axis, k, "b"), {d_g}, Init::kZeros);
      }
    }
    const std::size_t maps = 2 * config_.kernels.size() + 1;
    params_.Add("ic.out.w", {maps * d_g, d_g}, Init::kGlorot);
    params_.Add("ic.out.b", {d_g}, Init::kZeros);
  }
  params_.Add("out0.w", {d_g, c}, Init::kGlorot);
  params_.Add("out0.b", {c}, Init::kZeros);
  params_.Add("infer.z0.row", {d_h, d_z}, Init::kGlorot);
  params_.Add("infer.z0.col", {d_h, d_z}, Init::kGlorot);
  if (config_.use_b_tensor) {
    params_.Add("infer.z0.rel", {Z(config_.d_beta), d_z}, Init::kGlorot);
  }
  if (config_.rounds > 0) {
    params_.Add("infer.w2", {d_z + 3 * c, d_z}, Init::kGlorot);
    params_.Add("infer.w3", {d_z, c}, Init::kGlorot);
    params_.Add("infer.b2", {c}, Init::kZeros);
  }
}

template <typename T>
Var<T> GridModel<T>::EncodeChars(num::Tape<T>& tape, const Sentence& s) {
  const std::size_t n = s.size(), d_h = Z(config_.d_h);
  if (config_.encoder == EncoderKind::kFileBacked) {
    if (!vectors_) {
      throw IngestionError("file-backed encoder: no vector table loaded");
    }
    return tape.Constant(vectors_->Lookup(s.id, n, d_h).template Cast<T>());
  }
  std::vector<int> ids;
  ids.reserve(n);
  for (const std::string& c : s.chars) ids.push_back(vocabs_.chars.Id(c));
  return num::Embedding(P(tape, "encoder.char_embed"), ids, {n});
}

template <typename T>
std::tuple<Var<T>, Var<T>, Var<T>> GridModel<T>::UnitConvolution(
    num::Tape<T>& tape, const Var<T>& hD) {
  auto h_row = num::MatMul(hD, P(tape, "uc.row"));
  auto h_col = num::MatMul(hD, P(tape, "uc.col"));
  auto g = PairProject(h_row, h_col, P(tape, "uc.grid.w"), P(tape, "uc.grid.b"));
  return {h_row, h_col, g};
}

template <typename T>
Var<T> GridModel<T>::PairGrid(num::Tape<T>& tape, const Var<T>& hD) {
  return PairProject(hD, hD, P(tape, "pair.w"), P(tape, "pair.b"));
}

template <typename T>
Var<T> GridModel<T>::ImageConvolution(num::Tape<T>& tape, const Var<T>& g,
                                      std::vector<Var<T>>* maps) {
  // Windows start at the cell and extend right (rows) or down (columns),
  // zero-padded past the edge.
  std::vector<Var<T>> parts;
  for (const char* axis : {"row", "col"}) {
    const std::size_t shift_axis = axis[0] == 'r' ? 1 : 0;
    for (int k : config_.kernels) {
      std::vector<Var<T>> window = {g};
      for (int off = 1; off < k; ++off) {
        window.push_back(num::Shift(g, shift_axis, Z(off)));
      }
      parts.push_back(num::Add(
          num::MatMul(num::Concat(window), P(tape, Kernel(axis, k, "w"))),
          P(tape, Kernel(axis, k, "b"))));
    }
  }
  if (maps) *maps = parts;
  parts.push_back(g);
  return num::Add(num::MatMul(num::Concat(parts), P(tape, "ic.out.w")),
                  P(tape, "ic.out.b"));
}

template <typename T>
Var<T> GridModel<T>::InitialPrediction(num::Tape<T>& tape, const Var<T>& g) {
  return num::Softmax(
      num::Add(num::MatMul(g, P(tape, "out0.w")), P(tape, "out0.b")));
}

template <typename T>
Var<T> GridModel<T>::InitialZ(num::Tape<T>& tape, const Var<T>& h_row,
                              const Var<T>& h_col, const Var<T>& B) {
  // W_1 (a || b || c) computed as W_1a a + W_1b b + W_1c c.
  auto z = num::Add(num::ExpandRows(num::MatMul(h_row, P(tape, "infer.z0.row"))),
                    num::ExpandCols(num::MatMul(h_col, P(tape, "infer.z0.col"))));
  if (config_.use_b_tensor) {
    z = num::Add(z, num::MatMul(B, P(tape, "infer.z0.rel")));
  }
  return z;
}

template <typename T>
std::pair<Var<T>, Var<T>> GridModel<T>::InferenceRound(
    num::Tape<T>& tape, const Var<T>& z_prev, const Var<T>& p_prev,
    const Tensor<T>& pool_mask) {
  auto pooled = num::SymmetricMaxPool(p_prev, pool_mask);
  auto z = num::MatMul(num::Concat<T>({z_prev, num::ExpandRows(pooled),
                                       num::ExpandCols(pooled), p_prev}),
                       P(tape, "infer.w2"));
  auto p = num::Softmax(
      num::Add(num::MatMul(z, P(tape, "infer.w3")), P(tape, "infer.b2")));
  return {z, p};
}

template <typename T>
ForwardResult<T> GridModel<T>::Forward(num::Tape<T>& tape, const Sentence& s) {
  ForwardResult<T> r;
  r.h = EncodeChars(tape, s);
  r.hD = r.h;
  if (config_.use_lagcn) {
    const GraphInputs graph = BuildGraphInputs(s, vocabs_);
    auto fused = Fuse(tape, params_, config_.lagcn_dims(), r.h, graph);
    r.hD = fused.hD;
    r.B = fused.B;
    r.alpha = std::move(fused.alpha);
  }
  if (config_.use_uc) {
    std::tie(r.h_row, r.h_col, r.g_uc) = UnitConvolution(tape, r.hD);
  } else {
    r.h_row = r.h_col = r.hD;
    r.g_uc = PairGrid(tape, r.hD);
  }
  r.g = config_.use_ic ? ImageConvolution(tape, r.g_uc) : r.g_uc;
  r.p.push_back(InitialPrediction(tape, r.g));
  r.z.push_back(InitialZ(tape, r.h_row, r.h_col, r.B));
  if (config_.rounds > 0) {
    const Tensor<T> mask = MaskTensor<T>(s, config_.mode);
    for (int t = 1; t <= config_.rounds; ++t) {
      auto [z, p] = InferenceRound(tape, r.z.back(), r.p.back(), mask);
      r.z.push_back(z);
      r.p.push_back(p);
    }
  }
  return r;
}

template <typename T>
Tensor<T> GridModel<T>::PredictProbs(const Sentence& s) {
  num::Tape<T> tape;
  return Forward(tape, s).final_p().value();
}

template <typename T>
ExtractionResult GridModel<T>::Predict(const Sentence& s) {
  return DecodeGrid(ArgmaxLabels(PredictProbs(s)), s, config_.mode);
}

template <typename T>
Var<T> GridLoss(const Var<T>& probs, const LabelGrid& gold) {
  const std::size_t n = gold.n;
  if (probs.shape() != Shape{n, n, Z(kLabelCount)} ||
      gold.mask.size() != n * n || gold.labels.size() != n * n) {
    throw ContractError("loss: probabilities " + num::ShapeString(probs.shape()) +
                        " for a gold grid of " + std::to_string(n) + " chars");
  }
  std::vector<int> targets(n * n, -1);
  for (std::size_t k = 0; k < n * n; ++k) {
    if (gold.mask[k]) targets[k] = static_cast<int>(gold.labels[k]);
  }
  return num::CrossEntropy(probs, targets);
}

template <typename T>
std::vector<Label> ArgmaxLabels(const Tensor<T>& probs) {
  if (probs.rank() != 3 || probs.dim(2) != Z(kLabelCount)) {
    throw DimensionError("argmax: expected [n, n, 4], got " +
                         num::ShapeString(probs.shape()));
  }
  const std::size_t cells = probs.dim(0) * probs.dim(1);
  std::vector<Label> out(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    int best = 0;
    for (int c = 1; c < kLabelCount; ++c) {
      if (probs[k * kLabelCount + c] > probs[k * kLabelCount + best]) best = c;
    }
    out[k] = static_cast<Label>(best);
  }
  return out;
}

template <typename T>
Tensor<T> MaskTensor(const Sentence& s, TagMode mode) {
  const std::size_t n = s.size();
  const auto mask = SupervisionMask(s, mode);
  Tensor<T> out(Shape{n, n});
  for (std::size_t k = 0; k < n * n; ++k) out[k] = mask[k];
  return out;
}

template class GridModel<float>;
template class GridModel<double>;
template Var<float> GridLoss(const Var<float>&, const LabelGrid&);
template Var<double> GridLoss(const Var<double>&, const LabelGrid&);
template std::vector<Label> ArgmaxLabels(const Tensor<float>&);
template std::vector<Label> ArgmaxLabels(const Tensor<double>&);
template Tensor<float> MaskTensor(const Sentence&, TagMode);
template Tensor<double> MaskTensor(const Sentence&, TagMode);

}  // namespace gcgts
