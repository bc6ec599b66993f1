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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fixtures.h"
#include "gcgts/lagcn.h"
#include "gcgts/synthetic.h"
#include "gradcheck.h"

namespace gcgts {
namespace {

using num::ParameterStore;
using num::Tape;
using num::Tensor;

LagcnDims TinyDims(int layers = 1) {
  LagcnDims d;
  d.d_h = 4;
  d.d_r = 2;
  d.d_p = 2;
  d.d_beta = 3;
  d.layers = layers;
  return d;
}

// Two words: chars {0,1} and {2}; word 0 depends on word 1 via nsubj.
Sentence ThreeCharSentence() {
  Sentence s;
  s.chars = {"x", "y", "z"};
  s.words = {{0, 2}, {2, 3}};
  s.pos = {"NN", "VV"};
  s.deps = {{1, "nsubj"}, {kRootHead, "root"}};
  Validate(s);
  return s;
}

// Straight-line re-implementation of one layer with nested loops over the
// raw parameter tensors.
std::vector<double> NaiveLayer(const std::vector<double>& h,
                               const GraphInputs& g, const LagcnDims& d,
                               ParameterStore<double>& store,
                               std::vector<double>* alpha_out) {
  const int n = g.n;
  const auto& re = store.Get("lagcn.rel_embed").value;
  const auto& pe = store.Get("lagcn.pos_embed").value;
  const auto& w1 = store.Get("lagcn.l0.w1").value;
  const auto& w2 = store.Get("lagcn.l0.w2").value;
  const auto& w3 = store.Get("lagcn.l0.w3").value;
  const auto& w4 = store.Get("lagcn.l0.w4").value;
  std::vector<double> score(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<double> x;
      for (int k = 0; k < d.d_h; ++k) x.push_back(h[j * d.d_h + k]);
      for (int k = 0; k < d.d_p; ++k) x.push_back(pe.at(g.pos_ids[j], k));
      for (int k = 0; k < d.d_r; ++k) x.push_back(re.at(g.rel_ids[i * n + j], k));
      for (int o = 0; o < d.d_beta; ++o) {
        for (std::size_t k = 0; k < x.size(); ++k) {
          score[i * n + j] += x[k] * w4.at(k, o);
        }
      }
    }
  }
  std::vector<double> alpha(n * n, 0.0), out(n * d.d_h, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = 0;
    for (int j = 0; j < n; ++j) {
      if (g.adjacent[i * n + j]) z += std::exp(score[i * n + j]);
    }
    for (int j = 0; j < n; ++j) {
      if (g.adjacent[i * n + j]) alpha[i * n + j] = std::exp(score[i * n + j]) / z;
    }
    for (int j = 0; j < n; ++j) {
      std::vector<double> msg;
      for (int o = 0; o < d.d_a(); ++o) {
        double v = 0;
        for (int k = 0; k < d.d_h; ++k) v += h[j * d.d_h + k] * w1.at(k, o);
        msg.push_back(v);
      }
      for (int o = 0; o < d.d_b(); ++o) {
        double v = 0;
        for (int k = 0; k < d.d_r; ++k) {
          v += re.at(g.rel_ids[i * n + j], k) * w2.at(k, o);
        }
        msg.push_back(v);
      }
      for (int o = 0; o < d.d_c(); ++o) {
        double v = 0;
        for (int k = 0; k < d.d_p; ++k) v += pe.at(g.pos_ids[j], k) * w3.at(k, o);
        msg.push_back(v);
      }
      for (int k = 0; k < d.d_h; ++k) {
        out[i * d.d_h + k] += alpha[i * n + j] * msg[k];
      }
    }
  }
  for (double& v : out) v = std::max(v, 0.0);
  if (alpha_out) *alpha_out = alpha;
  return out;
}

template <typename T>
Tensor<T> RandomInput(std::size_t n, std::size_t d, std::uint64_t seed) {
  Tensor<T> t(num::Shape{n, d});
  Rng rng(seed);
  for (T& v : t.data()) v = static_cast<T>(rng.Uniform(-1, 1));
  return t;
}

TEST_CASE("single character: alpha is 1 and the message is self") {
  const Sentence s = testing::CharWordSentence(1);
  const Vocabs v = BuildVocabs({s});
  const GraphInputs g = BuildGraphInputs(s, v);
  const LagcnDims d = TinyDims();
  ParameterStore<double> store(3);
  AddLagcnParams(store, d, v.rel.size(), v.pos.size());
  const Tensor<double> h0 = RandomInput<double>(1, 4, 9);
  Tape<double> tape;
  auto out = LagcnLayer(tape, store, d, 0, tape.Constant(h0), g);
  CHECK(out.alpha.value().at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.h.shape() == num::Shape{1, 4});
  CHECK(out.beta.shape() == num::Shape{1, 1, 3});
  const auto naive = NaiveLayer(h0.vec(), g, d, store, nullptr);
  for (int k = 0; k < 4; ++k) {
    CHECK(out.h.value()[k] == doctest::Approx(naive[k]).epsilon(1e-12));
  }
}

TEST_CASE("three-character sentence matches the straight-line oracle") {
  const Sentence s = ThreeCharSentence();
  const Vocabs v = BuildVocabs({s});
  const GraphInputs g = BuildGraphInputs(s, v);
  const LagcnDims d = TinyDims();
  ParameterStore<double> store(0);
  AddLagcnParams(store, d, v.rel.size(), v.pos.size());
  // Fixed tiny weights, independent of the initializer.
  int salt = 0;
  for (auto& p : store) {
    ++salt;
    for (std::size_t k = 0; k < p.value.size(); ++k) {
      p.value[k] = 0.3 * std::sin(1.7 * k + salt);
    }
  }
  Tensor<double> h0(num::Shape{3, 4});
  for (std::size_t k = 0; k < h0.size(); ++k) h0[k] = 0.5 * std::cos(0.9 * k);

  Tape<double> tape;
  auto out = LagcnLayer(tape, store, d, 0, tape.Constant(h0), g);
  std::vector<double> alpha;
  const auto naive = NaiveLayer(h0.vec(), g, d, store, &alpha);
  for (std::size_t k = 0; k < naive.size(); ++k) {
    CHECK(out.h.value()[k] == doctest::Approx(naive[k]).epsilon(1e-12));
  }
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    CHECK(out.alpha.value()[k] == doctest::Approx(alpha[k]).epsilon(1e-12));
  }
  // Chars 0,1 (same word) and 2 (arc) are all mutually adjacent here.
  CHECK(std::all_of(g.adjacent.begin(), g.adjacent.end(),
                    [](auto a) { return a == 1; }));
}

TEST_CASE("attention rows are stochastic and zero off the graph") {
  const auto corpus = GenerateSyntheticCorpus(21, 100);
  const Vocabs v = BuildVocabs(corpus);
  const LagcnDims d;  // defaults
  ParameterStore<float> store(4);
  AddLagcnParams(store, d, v.rel.size(), v.pos.size());
  int bad_rows = 0, leaks = 0;
  for (const Sentence& s : corpus) {
    const GraphInputs g = BuildGraphInputs(s, v);
    Tape<float> tape;
    auto h = tape.Constant(RandomInput<float>(g.n, d.d_h, s.size()));
    const auto out = Fuse(tape, store, d, h, g);
    REQUIRE(out.alpha.size() == 2);
    for (const auto& a : out.alpha) {
      for (int i = 0; i < g.n; ++i) {
        double sum = 0;
        for (int j = 0; j < g.n; ++j) {
          const float x = a.value().at(i, j);
          sum += x;
          leaks += !g.adjacent[i * g.n + j] && x != 0.0f;
        }
        bad_rows += std::abs(sum - 1.0) > 1e-6;
      }
    }
  }
  CHECK(bad_rows == 0);
  CHECK(leaks == 0);
}

TEST_CASE("zero embeddings and W4 give uniform attention over neighbours") {
  const Sentence s = testing::RawMaterialSentence();
  const Vocabs v = BuildVocabs({s});
  const GraphInputs g = BuildGraphInputs(s, v);
  const LagcnDims d;
  ParameterStore<double> store(1);
  AddLagcnParams(store, d, v.rel.size(), v.pos.size());
  for (const char* name :
       {"lagcn.rel_embed", "lagcn.pos_embed", "lagcn.l0.w4", "lagcn.l1.w4"}) {
    store.Get(name).value.Fill(0.0);
  }
  Tape<double> tape;
  const auto out =
      Fuse(tape, store, d, tape.Constant(RandomInput<double>(8, d.d_h, 2)), g);
  for (const auto& a : out.alpha) {
    for (int i = 0; i < g.n; ++i) {
      const int deg = std::accumulate(g.adjacent.begin() + i * g.n,
                                      g.adjacent.begin() + (i + 1) * g.n, 0);
      for (int j = 0; j < g.n; ++j) {
        const double want = g.adjacent[i * g.n + j] ? 1.0 / deg : 0.0;
        CHECK(a.value().at(i, j) == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("one layer fuse equals a single layer call; B is the last beta") {
  const Sentence s = testing::RawMaterialSentence();
  const Vocabs v = BuildVocabs({s});
  const GraphInputs g = BuildGraphInputs(s, v);
  LagcnDims d;
  d.layers = 1;
  ParameterStore<float> store(6);
  AddLagcnParams(store, d, v.rel.size(), v.pos.size());
  const auto h0 = RandomInput<float>(8, d.d_h, 3);
  Tape<float> tape;
  const auto fused = Fuse(tape, store, d, tape.Constant(h0), g);
  const auto layer = LagcnLayer(tape, store, d, 0, tape.Constant(h0), g);
  CHECK(fused.hD.value() == layer.h.value());
  CHECK(fused.B.value() == layer.beta.value());

  d.layers = 2;
  ParameterStore<float> store2(6);
  AddLagcnParams(store2, d, v.rel.size(), v.pos.size());
  const auto two = Fuse(tape, store2, d, tape.Constant(h0), g);
  const auto l0 = LagcnLayer(tape, store2, d, 0, tape.Constant(h0), g);
  const auto l1 = LagcnLayer(tape, store2, d, 1, l0.h, g);
  CHECK(two.hD.value() == l1.h.value());
  CHECK(two.B.value() == l1.beta.value());
  CHECK(two.B.shape() == num::Shape{8, 8, 16});
}

TEST_CASE("relabeling relation ids leaves the output unchanged") {
  const Sentence s = testing::RawMaterialSentence();
  const Vocabs v = BuildVocabs({s});
  const GraphInputs g = BuildGraphInputs(s, v);
  const LagcnDims d;
  ParameterStore<double> a(8), b(8);
  AddLagcnParams(a, d, v.rel.size(), v.pos.size());
  AddLagcnParams(b, d, v.rel.size(), v.pos.size());
  // perm[old] = new, a rotation of all ids.
  const int r = v.rel.size();
  std::vector<int> perm(r);
  for (int k = 0; k < r; ++k) perm[k] = (k + 2) % r;
  auto& ta = a.Get("lagcn.rel_embed").value;
  auto& tb = b.Get("lagcn.rel_embed").value;
  for (int k = 0; k < r; ++k) {
    for (int c = 0; c < d.d_r; ++c) tb.at(perm[k], c) = ta.at(k, c);
  }
  GraphInputs gp = g;
  for (int& id : gp.rel_ids) id = perm[id];
  const auto h0 = RandomInput<double>(8, d.d_h, 5);
  Tape<double> tape;
  const auto oa = Fuse(tape, a, d, tape.Constant(h0), g);
  const auto ob = Fuse(tape, b, d, tape.Constant(h0), gp);
  CHECK(oa.hD.value() == ob.hD.value());
  CHECK(oa.B.value() == ob.B.value());
}

TEST_CASE("gradients of a readout match central differences") {
  const Sentence s = ThreeCharSentence();
  const Vocabs v = BuildVocabs({s, testing::RawMaterialSentence()});
  for (const Sentence& sent : {s, testing::RawMaterialSentence()}) {
    const GraphInputs g = BuildGraphInputs(sent, v);
    LagcnDims d = TinyDims(2);
    d.d_h = 8;
    ParameterStore<double> store(12);
    AddLagcnParams(store, d, v.rel.size(), v.pos.size());
    const std::size_t n = g.n;
    const auto h0 = RandomInput<double>(n, 8, 13);
    const auto ch = testing::RandomTensor({n, 8}, 14);
    const auto cb = testing::RandomTensor({n, n, 3}, 15);
    auto loss = [&](Tape<double>& tape) {
      const auto out = Fuse(tape, store, d, tape.Constant(h0), g);
      return num::Add(num::Sum(num::Mul(out.hD, tape.Constant(ch))),
                      num::Sum(num::Mul(out.B, tape.Constant(cb))));
    };
    const auto errors = testing::ParamGradErrors(store, loss);
    CHECK(errors.size() == 10);
    for (const auto& [name, err] : errors) {
      CHECK_MESSAGE(err < 1e-3, name, " rel err ", err);
    }
    // Gradient with respect to the input features as well.
    const double leaf_err = testing::LeafGradError(
        [&](Tape<double>& tape, const std::vector<num::Var<double>>& x) {
          const auto out = Fuse(tape, store, d, x[0], g);
          return num::Sum(num::Mul(out.hD, tape.Constant(ch)));
        },
        {h0});
    CHECK(leaf_err < 1e-3);
  }
}

TEST_CASE("shape mismatch is a dimension error") {
  const Sentence s = ThreeCharSentence();
  const Vocabs v = BuildVocabs({s});
  const GraphInputs g = BuildGraphInputs(s, v);
  const LagcnDims d = TinyDims();
  ParameterStore<double> store(0);
  AddLagcnParams(store, d, v.rel.size(), v.pos.size());
  Tape<double> tape;
  CHECK_THROWS_AS(LagcnLayer(tape, store, d, 0,
                             tape.Constant(RandomInput<double>(2, 4, 1)), g),
                  DimensionError);
}

}  // namespace
}  // namespace gcgts
