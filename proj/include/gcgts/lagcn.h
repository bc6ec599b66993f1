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

// Label-aware graph convolution over the character dependency graph.
//
// One layer, for characters i and j:
//
//   beta[i,j]  = W4 (h[j] || p[j] || r[i,j])
//   alpha[i,.] = softmax over neighbours j (adjacent[i,j] = 1) of sum(beta[i,j])
//   h'[i]      = relu(sum_j alpha[i,j] (W1 h[j] || W2 r[i,j] || W3 p[j]))
//
// r[i,j] embeds the relation type between i and j and p[j] the POS of the
// word containing j. The two embedding tables are shared by all layers. The
// final layer's beta is returned as the relation grid B.

#ifndef GCGTS_LAGCN_H_
#define GCGTS_LAGCN_H_

#include <string>
#include <vector>

#include "gcgts/ops.h"
#include "gcgts/parameter.h"
#include "gcgts/sentence.h"
#include "gcgts/tape.h"
#include "gcgts/vocab.h"

namespace gcgts {

struct LagcnDims {
  int d_h = 128;
  int d_r = 8;
  int d_p = 8;
  int d_beta = 16;
  int layers = 2;

  int d_a() const { return d_h / 2; }
  int d_b() const { return d_h / 4; }
  int d_c() const { return d_h - d_a() - d_b(); }
};

// Per-sentence graph features, independent of parameters.
struct GraphInputs {
  int n = 0;
  std::vector<int> rel_ids;            // n*n relation vocab ids
  std::vector<int> pos_ids;            // n, POS id of each char's word
  std::vector<std::uint8_t> adjacent;  // n*n
};

GraphInputs BuildGraphInputs(const Sentence& sentence, const Vocabs& vocabs);

// Parameter names: lagcn.rel_embed, lagcn.pos_embed, lagcn.l<k>.w1 .. w4.
template <typename T>
void AddLagcnParams(num::ParameterStore<T>& store, const LagcnDims& dims,
                    int num_rels, int num_pos);

template <typename T>
struct LagcnLayerOutput {
  num::Var<T> h;      // [n, d_h]
  num::Var<T> beta;   // [n, n, d_beta]
  num::Var<T> alpha;  // [n, n]
};

template <typename T>
struct FusionOutput {
  num::Var<T> hD;                  // [n, d_h]
  num::Var<T> B;                   // [n, n, d_beta]
  std::vector<num::Var<T>> alpha;  // one [n, n] per layer
};

// Layer `layer` (0-based) applied to h_prev.
template <typename T>
LagcnLayerOutput<T> LagcnLayer(num::Tape<T>& tape, num::ParameterStore<T>& store,
                               const LagcnDims& dims, int layer,
                               const num::Var<T>& h_prev,
                               const GraphInputs& graph);

template <typename T>
FusionOutput<T> Fuse(num::Tape<T>& tape, num::ParameterStore<T>& store,
                     const LagcnDims& dims, const num::Var<T>& h,
                     const GraphInputs& graph);

}  // namespace gcgts

#endif  // GCGTS_LAGCN_H_
