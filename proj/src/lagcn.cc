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

#include "gcgts/lagcn.h"

#include "gcgts/errors.h"
#include "gcgts/grid.h"

namespace gcgts {
namespace {

using num::Init;
using num::ShapeString;
using num::Shape;
using num::Tensor;
using num::Var;

std::string LayerName(int layer, const char* w) {
  return "lagcn.l" + std::to_string(layer) + "." + w;
}

}  // namespace

GraphInputs BuildGraphInputs(const Sentence& sentence, const Vocabs& vocabs) {
  const CharGraph graph = CharRelationMatrix(sentence);
  GraphInputs in;
  in.n = graph.n;
  in.rel_ids = RelationIds(graph, vocabs.rel);
  in.adjacent = graph.adjacent;
  in.pos_ids.reserve(in.n);
  for (int c = 0; c < in.n; ++c) {
    in.pos_ids.push_back(vocabs.pos.Id(sentence.pos[sentence.WordOf(c)]));
  }
  return in;
}

template <typename T>
void AddLagcnParams(num::ParameterStore<T>& store, const LagcnDims& dims,
                    int num_rels, int num_pos) {
  if (dims.layers < 1 || dims.d_h % 4 != 0) {
    throw ContractError("lagcn: need layers >= 1 and d_h divisible by 4");
  }
  const std::size_t d_h = dims.d_h, d_r = dims.d_r, d_p = dims.d_p;
  store.Add("lagcn.rel_embed", {static_cast<std::size_t>(num_rels), d_r},
            Init::kNormal);
  store.Add("lagcn.pos_embed", {static_cast<std::size_t>(num_pos), d_p},
            Init::kNormal);
  for (int l = 0; l < dims.layers; ++l) {
    store.Add(LayerName(l, "w1"), {d_h, std::size_t(dims.d_a())}, Init::kGlorot);
    store.Add(LayerName(l, "w2"), {d_r, std::size_t(dims.d_b())}, Init::kGlorot);
    store.Add(LayerName(l, "w3"), {d_p, std::size_t(dims.d_c())}, Init::kGlorot);
    store.Add(LayerName(l, "w4"), {d_h + d_p + d_r, std::size_t(dims.d_beta)},
              Init::kGlorot);
  }
}

template <typename T>
LagcnLayerOutput<T> LagcnLayer(num::Tape<T>& tape, num::ParameterStore<T>& store,
                               const LagcnDims& dims, int layer,
                               const Var<T>& h_prev, const GraphInputs& graph) {
  const std::size_t n = graph.n;
  if (h_prev.shape() != Shape{n, std::size_t(dims.d_h)}) {
    throw DimensionError("lagcn: h " + ShapeString(h_prev.shape()) +
                         " for a graph of " + std::to_string(n) + " chars");
  }
  if (n == 0) {
    return {h_prev, tape.Constant(Tensor<T>(Shape{0, 0, std::size_t(dims.d_beta)})),
            tape.Constant(Tensor<T>(Shape{0, 0}))};
  }
  auto rel = num::Embedding(tape.Param(store.Get("lagcn.rel_embed")),
                            graph.rel_ids, {n, n});               // [n,n,d_r]
  auto pos = num::Embedding(tape.Param(store.Get("lagcn.pos_embed")),
                            graph.pos_ids, {n});                  // [n,d_p]
  auto w1 = tape.Param(store.Get(LayerName(layer, "w1")));
  auto w2 = tape.Param(store.Get(LayerName(layer, "w2")));
  auto w3 = tape.Param(store.Get(LayerName(layer, "w3")));
  auto w4 = tape.Param(store.Get(LayerName(layer, "w4")));

  // Eq. 2: beta[i,j] = W4 (h_j || p_j || r_ij), with the column-only part
  // computed once per character before broadcasting over rows.
  const std::size_t d_h = dims.d_h, d_hp = d_h + dims.d_p;
  auto per_col = num::Add(num::MatMul(h_prev, num::SliceRows(w4, 0, d_h)),
                          num::MatMul(pos, num::SliceRows(w4, d_h, d_hp)));
  auto beta = num::Add(
      num::ExpandCols(per_col),
      num::MatMul(rel, num::SliceRows(w4, d_hp, d_hp + dims.d_r)));
  // Eq. 3: neighbour-masked softmax of the component sums.
  Tensor<T> mask(Shape{n, n});
  for (std::size_t k = 0; k < n * n; ++k) mask[k] = graph.adjacent[k];
  auto alpha = num::MaskedSoftmax(num::SumLastAxis(beta), mask);
  // Eq. 1: relu of the attention-weighted messages.
  auto messages = num::Concat<T>({num::ExpandCols(num::MatMul(h_prev, w1)),
                                  num::MatMul(rel, w2),
                                  num::ExpandCols(num::MatMul(pos, w3))});
  return {num::Relu(num::Attend(alpha, messages)), beta, alpha};
}

template <typename T>
FusionOutput<T> Fuse(num::Tape<T>& tape, num::ParameterStore<T>& store,
                     const LagcnDims& dims, const Var<T>& h,
                     const GraphInputs& graph) {
  FusionOutput<T> out;
  Var<T> cur = h;
  for (int l = 0; l < dims.layers; ++l) {
    auto layer = LagcnLayer(tape, store, dims, l, cur, graph);
    cur = layer.h;
    out.B = layer.beta;
    out.alpha.push_back(layer.alpha);
  }
  out.hD = cur;
  return out;
}

#define GCGTS_INSTANTIATE(T)                                                  \
  template void AddLagcnParams(num::ParameterStore<T>&, const LagcnDims&, int, \
                               int);                                          \
  template LagcnLayerOutput<T> LagcnLayer(num::Tape<T>&,                      \
                                          num::ParameterStore<T>&,            \
                                          const LagcnDims&, int,              \
                                          const Var<T>&, const GraphInputs&); \
  template FusionOutput<T> Fuse(num::Tape<T>&, num::ParameterStore<T>&,       \
                                const LagcnDims&, const Var<T>&,              \
                                const GraphInputs&);
GCGTS_INSTANTIATE(float)
GCGTS_INSTANTIATE(double)
#undef GCGTS_INSTANTIATE

}  // namespace gcgts
