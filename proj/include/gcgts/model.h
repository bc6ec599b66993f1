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

// The grid tagging network.
//
//   chars -> h (embedding table or sidecar vectors)
//         -> hD, B         graph encoder, when use_lagcn
//         -> G             unit convolution  G[i,j] = W_G (U' hD_i || U'' hD_j) + b
//                          (use_uc), else    G[i,j] = W (hD_i || hD_j) + b
//         -> G_IC          row/column convolutions + combiner, when use_ic
//         -> p0            softmax(W_0 G + b_0)
//         -> z0            W_1 (hD'_i || hD''_j [|| B_ij when use_b_tensor])
//         -> p1..pT        z_t = W_2 (z_{t-1} || pool_i || pool_j || p_{t-1})
//                          p_t = softmax(W_3 z_t + b_2)
//
// pool_i is the elementwise max of p_{t-1} over row i of the symmetric grid,
// restricted to supervised cells.

#ifndef GCGTS_MODEL_H_
#define GCGTS_MODEL_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "gcgts/decode.h"
#include "gcgts/grid.h"
#include "gcgts/lagcn.h"
#include "gcgts/model_config.h"
#include "gcgts/parameter.h"
#include "gcgts/tape.h"
#include "gcgts/vectors.h"
#include "gcgts/vocab.h"

namespace gcgts {

template <typename T>
struct ForwardResult {
  num::Var<T> h;                   // encoder output [n, d_h]
  num::Var<T> hD;                  // fused characters [n, d_h]
  num::Var<T> B;                   // [n, n, d_beta]; invalid without lagcn
  std::vector<num::Var<T>> alpha;  // per graph layer [n, n]
  num::Var<T> h_row;               // hD' [n, d_h]
  num::Var<T> h_col;               // hD'' [n, d_h]
  num::Var<T> g_uc;                // unit (or pair) grid [n, n, d_g]
  num::Var<T> g;                   // grid read by p0 [n, n, d_g]
  std::vector<num::Var<T>> z;      // rounds 0..T [n, n, d_z]
  std::vector<num::Var<T>> p;      // rounds 0..T [n, n, 4]

  const num::Var<T>& final_p() const { return p.back(); }
};

template <typename T>
class GridModel {
 public:
  // Registers every parameter the flags call for, seeded by `seed`.
  GridModel(ModelConfig config, Vocabs vocabs, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  const Vocabs& vocabs() const { return vocabs_; }
  num::ParameterStore<T>& params() { return params_; }
  const num::ParameterStore<T>& params() const { return params_; }

  // Required before Forward in file-backed mode.
  void SetVectors(std::shared_ptr<const VectorTable> table) {
    vectors_ = std::move(table);
  }

  ForwardResult<T> Forward(num::Tape<T>& tape, const Sentence& sentence);

  // Components, exposed for testing.
  num::Var<T> EncodeChars(num::Tape<T>& tape, const Sentence& sentence);
  // Returns (hD', hD'', G_UC).
  std::tuple<num::Var<T>, num::Var<T>, num::Var<T>> UnitConvolution(
      num::Tape<T>& tape, const num::Var<T>& hD);
  num::Var<T> PairGrid(num::Tape<T>& tape, const num::Var<T>& hD);
  // Returns G_IC; `maps` (if non-null) receives row_k..., col_k... in
  // kernel order.
  num::Var<T> ImageConvolution(num::Tape<T>& tape, const num::Var<T>& g,
                               std::vector<num::Var<T>>* maps = nullptr);
  num::Var<T> InitialPrediction(num::Tape<T>& tape, const num::Var<T>& g);
  num::Var<T> InitialZ(num::Tape<T>& tape, const num::Var<T>& h_row,
                       const num::Var<T>& h_col, const num::Var<T>& B);
  // Returns (z_t, p_t).
  std::pair<num::Var<T>, num::Var<T>> InferenceRound(
      num::Tape<T>& tape, const num::Var<T>& z_prev, const num::Var<T>& p_prev,
      const num::Tensor<T>& pool_mask);

  // Final-round probabilities and decoded extraction.
  num::Tensor<T> PredictProbs(const Sentence& sentence);
  ExtractionResult Predict(const Sentence& sentence);

 private:
  num::Var<T> P(num::Tape<T>& tape, const std::string& name) {
    return tape.Param(params_.Get(name));
  }

  ModelConfig config_;
  Vocabs vocabs_;
  num::ParameterStore<T> params_;
  std::shared_ptr<const VectorTable> vectors_;
};

// Sum over supervised cells of -log p[i,j,gold]. Throws ContractError when
// the grid sizes disagree.
template <typename T>
num::Var<T> GridLoss(const num::Var<T>& probs, const LabelGrid& gold);

// Per-cell argmax over labels (first maximum wins).
template <typename T>
std::vector<Label> ArgmaxLabels(const num::Tensor<T>& probs);

// The supervision mask as a 0/1 tensor [n, n].
template <typename T>
num::Tensor<T> MaskTensor(const Sentence& sentence, TagMode mode);

}  // namespace gcgts

#endif  // GCGTS_MODEL_H_
