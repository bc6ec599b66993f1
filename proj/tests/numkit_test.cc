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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "gcgts/adam.h"
#include "gcgts/ops.h"
#include "gradcheck.h"

namespace gcgts::num {
namespace {

using testing::LeafGradError;
using testing::RandomTensor;

using TD = Tensor<double>;
using VD = Var<double>;

TEST_CASE("tensor rejects data that does not fill the shape") {
  CHECK_THROWS_AS(TD(Shape{2, 3}, std::vector<double>(5)), DimensionError);
  TD t(Shape{2, 3});
  t.at(1, 2) = 7;
  CHECK(t[5] == 7);
  CHECK_THROWS_AS(t.at(2, 0), IndexError);
}

TEST_CASE("matmul by identity returns the matrix") {
  Tape<double> tape;
  TD eye(Shape{3, 3});
  for (int i = 0; i < 3; ++i) eye.at(i, i) = 1;
  TD m = RandomTensor({3, 3}, 5);
  auto out = MatMul(tape.Constant(eye), tape.Constant(m));
  CHECK(out.value() == m);
}

TEST_CASE("matmul small hand example") {
  Tape<double> tape;
  auto a = tape.Constant(TD(Shape{2, 2}, {1, 2, 3, 4}));
  auto b = tape.Constant(TD(Shape{2, 1}, {1, 1}));
  auto out = MatMul(a, b);
  CHECK(out.shape() == Shape{2, 1});
  CHECK(out.value().vec() == std::vector<double>{3, 7});
}

TEST_CASE("matmul shape mismatch names both shapes") {
  Tape<double> tape;
  auto a = tape.Constant(TD(Shape{2, 3}));
  auto b = tape.Constant(TD(Shape{4, 2}));
  try {
    MatMul(a, b);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(2,3)") != std::string::npos);
    CHECK(msg.find("(4,2)") != std::string::npos);
  }
}

TEST_CASE("matmul gradient of sum equals ones times b transpose") {
  const TD a = RandomTensor({4, 5}, 11);
  const TD b = RandomTensor({5, 2}, 12);
  Tape<double> tape;
  auto va = tape.Leaf(a);
  auto vb = tape.Constant(b);
  tape.Backward(Sum(MatMul(va, vb)));
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(va.grad().at(r, k) == doctest::Approx(b.at(k, 0) + b.at(k, 1)));
    }
  }
  auto f = [](Tape<double>&, const std::vector<VD>& x) {
    return Sum(MatMul(x[0], x[1]));
  };
  CHECK(LeafGradError(f, {a, b}) < 1e-4);
}

TEST_CASE("relu and concat forward") {
  Tape<double> tape;
  auto r = Relu(tape.Constant(TD(Shape{3}, {-1, 0, 2})));
  CHECK(r.value().vec() == std::vector<double>{0, 0, 2});
  auto c = Concat<double>({tape.Constant(TD(Shape{2}, {1, 2})),
                           tape.Constant(TD(Shape{1}, {3}))});
  CHECK(c.shape() == Shape{3});
  CHECK(c.value().vec() == std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(Concat<double>({tape.Constant(TD(Shape{2, 2})),
                                  tape.Constant(TD(Shape{3, 1}))}),
                  DimensionError);
}

TEST_CASE("relu subgradient at zero is zero") {
  Tape<double> tape;
  auto x = tape.Leaf(TD(Shape{3}, {-1, 0, 2}));
  tape.Backward(Sum(Relu(x)));
  CHECK(x.grad().vec() == std::vector<double>{0, 0, 1});
}

TEST_CASE("max over axis routes ties to the first maximal index") {
  Tape<double> tape;
  auto x = tape.Leaf(TD(Shape{2, 3}, {1, 5, 5, 2, 2, 0}));
  auto m = MaxOverAxis(x, 1);
  CHECK(m.value().vec() == std::vector<double>{5, 2});
  tape.Backward(Sum(m));
  CHECK(x.grad().vec() == std::vector<double>{0, 1, 0, 1, 0, 0});
}

TEST_CASE("elementwise ops pass finite-difference checks") {
  const TD a = RandomTensor({3, 4}, 21);
  const TD b = RandomTensor({3, 4}, 22);
  const TD bias = RandomTensor({4}, 23);
  SUBCASE("max over axis") {
    auto f0 = [](Tape<double>&, const std::vector<VD>& x) {
      return Sum(Mul(MaxOverAxis(x[0], 0), MaxOverAxis(x[0], 0)));
    };
    auto f1 = [](Tape<double>&, const std::vector<VD>& x) {
      auto m = MaxOverAxis(x[0], 1);
      return Sum(Mul(m, m));
    };
    CHECK(LeafGradError(f0, {a}) < 1e-4);
    CHECK(LeafGradError(f1, {a}) < 1e-4);
  }
  SUBCASE("add, mul, broadcast, relu, concat") {
    auto f = [](Tape<double>&, const std::vector<VD>& x) {
      auto s = Add(Mul(x[0], x[1]), x[2]);
      auto c = Concat<double>({Relu(s), x[1]});
      return Sum(Mul(c, c));
    };
    CHECK(LeafGradError(f, {a, b, bias}) < 1e-4);
  }
  SUBCASE("grid plumbing") {
    const TD grid = RandomTensor({3, 3, 2}, 24);
    const TD rows = RandomTensor({3, 2}, 25);
    const TD w = RandomTensor({3, 3}, 26);
    auto f = [](Tape<double>&, const std::vector<VD>& x) {
      auto g = Add(Add(x[0], ExpandRows(x[1])), ExpandCols(x[1]));
      auto sh = Add(Shift(g, 1, 1), Shift(g, 0, 2));
      auto att = Attend(x[2], sh);
      auto s = SumLastAxis(sh);
      return Add(Sum(Mul(att, att)), Sum(Mul(s, s)));
    };
    CHECK(LeafGradError(f, {grid, rows, w}) < 1e-4);
  }
  SUBCASE("embedding") {
    const TD table = RandomTensor({4, 3}, 27);
    const std::vector<int> ids{0, 2, 2, 3};
    auto f = [&ids](Tape<double>&, const std::vector<VD>& x) {
      auto e = Embedding(x[0], ids, Shape{2, 2});
      return Sum(Mul(e, e));
    };
    CHECK(LeafGradError(f, {table}) < 1e-4);
  }
}

TEST_CASE("embedding rejects out-of-vocabulary ids") {
  Tape<double> tape;
  auto t = tape.Constant(TD(Shape{3, 2}));
  const std::vector<int> ids{3};
  CHECK_THROWS_AS(Embedding(t, ids, Shape{1}), IndexError);
}

TEST_CASE("masked softmax") {
  Tape<double> tape;
  SUBCASE("uniform") {
    auto y = MaskedSoftmax(tape.Constant(TD(Shape{3}, {0, 0, 0})),
                           TD(Shape{3}, {1, 1, 1}));
    for (double v : y.value().data()) CHECK(v == doctest::Approx(1.0 / 3));
  }
  SUBCASE("single survivor") {
    auto y = MaskedSoftmax(tape.Constant(TD(Shape{2}, {5, 1})),
                           TD(Shape{2}, {1, 0}));
    CHECK(y.value().vec() == std::vector<double>{1, 0});
  }
  SUBCASE("large logits do not overflow") {
    auto y = MaskedSoftmax(tape.Constant(TD(Shape{2}, {1000, 1000})),
                           TD(Shape{2}, {1, 1}));
    CHECK(y.value().vec() == std::vector<double>{0.5, 0.5});
  }
  SUBCASE("empty mask gives zeros, not NaN") {
    auto y = MaskedSoftmax(tape.Constant(TD(Shape{2}, {3, 4})),
                           TD(Shape{2}, {0, 0}));
    CHECK(y.value().vec() == std::vector<double>{0, 0});
  }
}

TEST_CASE("masked softmax rows sum to one on random inputs") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.Below(9);
    TD logits = RandomTensor({n}, 100 + trial, -30, 30);
    TD mask(Shape{n});
    bool any = false;
    for (double& m : mask.data()) {
      m = rng.Bernoulli(0.5) ? 1 : 0;
      any = any || m == 1;
    }
    Tape<double> tape;
    auto y = MaskedSoftmax(tape.Constant(logits), mask);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i] == 0) CHECK(y.value()[i] == 0.0);
      total += y.value()[i];
    }
    if (any) {
      CHECK(std::abs(total - 1) <= 1e-6);
    } else {
      CHECK(total == 0.0);
    }
  }
}

TEST_CASE("softmax gradients pass finite differences") {
  const TD logits = RandomTensor({3, 5}, 41, -3, 3);
  TD mask(Shape{3, 5}, 1.0);
  mask.at(0, 1) = 0;
  mask.at(2, 4) = 0;
  const TD weights = RandomTensor({3, 5}, 42);
  auto f = [&](Tape<double>& t, const std::vector<VD>& x) {
    auto y = MaskedSoftmax(x[0], mask);
    return Sum(Mul(y, t.Constant(weights)));
  };
  CHECK(LeafGradError(f, {logits}) < 1e-4);
}

TEST_CASE("cross entropy values") {
  Tape<double> tape;
  const std::vector<int> zero{0};
  const std::vector<int> two{2};
  auto onehot = tape.Constant(TD(Shape{4}, {1, 0, 0, 0}));
  CHECK(CrossEntropy(onehot, zero).value().item() == 0.0);
  auto uniform = tape.Constant(TD(Shape{4}, 0.25));
  CHECK(CrossEntropy(uniform, two).value().item() ==
        doctest::Approx(1.386294).epsilon(1e-6));
  const std::vector<int> bad{4};
  CHECK_THROWS_AS(CrossEntropy(uniform, bad), IndexError);
  // Confidently wrong: clamped instead of infinite.
  CHECK(std::isfinite(CrossEntropy(onehot, two).value().item()));
}

TEST_CASE("cross entropy through softmax passes finite differences") {
  const TD logits = RandomTensor({4}, 51, -2, 2);
  const std::vector<int> target{1};
  auto f = [&](Tape<double>&, const std::vector<VD>& x) {
    return CrossEntropy(Softmax(x[0]), target);
  };
  CHECK(LeafGradError(f, {logits}) < 1e-4);
  const TD grid = RandomTensor({2, 3, 4}, 52, -2, 2);
  const std::vector<int> targets{0, -1, 3, 2, -1, 1};
  auto g = [&](Tape<double>&, const std::vector<VD>& x) {
    return CrossEntropy(Softmax(x[0]), targets);
  };
  CHECK(LeafGradError(g, {grid}) < 1e-4);
}

TEST_CASE("symmetric max pool reads the upper triangle and skips masked cells") {
  Tape<double> tape;
  const std::size_t n = 3;
  TD p(Shape{n, n, 2});
  p.at(0, 2, 1) = 0.9;  // upper cell, visible from rows 0 and 2
  p.at(2, 0, 1) = 5.0;  // lower cell, never read
  p.at(1, 1, 0) = 0.7;
  TD mask(Shape{n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) mask.at(i, j) = 1;
  mask.at(1, 1) = 0;
  auto x = tape.Leaf(p);
  auto pooled = SymmetricMaxPool(x, mask);
  CHECK(pooled.value().at(0, 1) == 0.9);
  CHECK(pooled.value().at(2, 1) == 0.9);
  CHECK(pooled.value().at(1, 0) == 0.0);
  tape.Backward(Sum(pooled));
  CHECK(x.grad().at(2, 0, 1) == 0.0);
  CHECK(x.grad().at(1, 1, 0) == 0.0);

  const TD rnd = RandomTensor({4, 4, 3}, 61);
  TD full(Shape{4, 4});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) full.at(i, j) = 1;
  auto f = [&](Tape<double>&, const std::vector<VD>& v) {
    auto m = SymmetricMaxPool(v[0], full);
    return Sum(Mul(m, m));
  };
  CHECK(testing::LeafGradError(f, {rnd}) < 1e-4);
}

TEST_CASE("backward basics") {
  SUBCASE("sum") {
    Tape<double> tape;
    auto x = tape.Leaf(TD(Shape{3}, {4, 5, 6}));
    tape.Backward(Sum(x));
    CHECK(x.grad().vec() == std::vector<double>{1, 1, 1});
  }
  SUBCASE("square") {
    Tape<double> tape;
    auto x = tape.Leaf(TD(Shape{2}, {1, 2}));
    tape.Backward(Sum(Mul(x, x)));
    CHECK(x.grad().vec() == std::vector<double>{2, 4});
  }
  SUBCASE("non-scalar loss is rejected") {
    Tape<double> tape;
    auto x = tape.Leaf(TD(Shape{2}, {1, 2}));
    CHECK_THROWS_AS(tape.Backward(Relu(x)), ContractError);
  }
  SUBCASE("second backward without reset is rejected") {
    Tape<double> tape;
    auto x = tape.Leaf(TD(Shape{2}, {1, 2}));
    auto loss = Sum(x);
    tape.Backward(loss);
    CHECK_THROWS_AS(tape.Backward(loss), ContractError);
    tape.Reset();
    auto y = tape.Leaf(TD(Shape{1}, {3}));
    CHECK_NOTHROW(tape.Backward(Sum(y)));
  }
}

TEST_CASE("tape parents precede children and replay is repeatable") {
  ParameterStore<float> store(3);
  store.Add("w", {3, 2}, Init::kGlorot);
  Tensor<float> input(Shape{4, 3});
  for (std::size_t i = 0; i < input.size(); ++i) input[i] = 0.1f * i - 0.5f;
  std::vector<Tensor<float>> grads;
  for (int run = 0; run < 2; ++run) {
    store.ZeroGrad();
    Tape<float> tape;
    auto h = Relu(MatMul(tape.Constant(input), tape.Param(store.Get("w"))));
    auto loss = Sum(Mul(h, h));
    for (std::size_t id = 0; id < tape.size(); ++id) {
      for (std::size_t p : tape.parents(id)) CHECK(p < id);
    }
    tape.Backward(loss);
    grads.push_back(store.Get("w").grad);
  }
  CHECK(grads[0] == grads[1]);
}

TEST_CASE("parameter init is deterministic per name and seed") {
  ParameterStore<float> a(7), b(7), c(8);
  a.Add("x", {4, 4}, Init::kGlorot);
  b.Add("x", {4, 4}, Init::kGlorot);
  c.Add("x", {4, 4}, Init::kGlorot);
  CHECK(a.Get("x").value == b.Get("x").value);
  CHECK_FALSE(a.Get("x").value == c.Get("x").value);
  const double bound = std::sqrt(6.0 / 8.0);
  for (float v : a.Get("x").value.data()) CHECK(std::abs(v) <= bound);
  a.Add("bias", {4}, Init::kZeros);
  for (float v : a.Get("bias").value.data()) CHECK(v == 0.0f);
  CHECK_THROWS_AS(a.Add("x", {1}, Init::kZeros), ContractError);
}

TEST_CASE("adam: zero gradient leaves params and decays moments") {
  ParameterStore<double> store;
  auto& w = store.Add("w", {2}, Init::kZeros);
  w.value = TD(Shape{2}, {1.5, -2});
  const TD initial = w.value;
  Adam<double> adam(AdamOptions{.lr = 0.1});
  adam.Step(store);  // fresh state, zero gradient
  CHECK(w.value == initial);
  w.grad = TD(Shape{2}, {1, 1});
  adam.Step(store);
  const double m_before = adam.moments("w").m[0];
  const double v_before = adam.moments("w").v[0];
  w.grad.Fill(0);
  adam.Step(store);
  CHECK(adam.moments("w").m[0] == doctest::Approx(0.9 * m_before));
  CHECK(adam.moments("w").v[0] == doctest::Approx(0.999 * v_before));
}

TEST_CASE("adam: first step moves against the gradient by about lr") {
  ParameterStore<double> store;
  auto& w = store.Add("w", {1}, Init::kZeros);
  w.grad = TD(Shape{1}, {1});
  Adam<double> adam(AdamOptions{.lr = 5e-5});
  adam.Step(store);
  CHECK(w.value[0] < 0);
  CHECK(w.value[0] == doctest::Approx(-5e-5).epsilon(1e-6));
}

TEST_CASE("adam: quadratic converges and matches the scalar recursion") {
  // Expected value produced by running the textbook recursion on
  // f(w) = (w - 3)^2, lr = 0.1, 100 steps, outside this code base.
  constexpr double kOracleFinal = 2.9806554375278123;
  ParameterStore<double> store;
  auto& w = store.Add("w", {1}, Init::kZeros);
  Adam<double> adam(AdamOptions{.lr = 0.1});
  for (int step = 0; step < 100; ++step) {
    w.grad[0] = 2 * (w.value[0] - 3);
    adam.Step(store);
  }
  CHECK(std::abs(w.value[0] - 3) < 0.1);
  CHECK(w.value[0] == doctest::Approx(kOracleFinal).epsilon(1e-12));
}

TEST_CASE("adam: missing gradient is a contract error") {
  ParameterStore<double> store;
  auto& w = store.Add("w", {2}, Init::kZeros);
  w.grad = TD();
  Adam<double> adam;
  CHECK_THROWS_AS(adam.Step(store), ContractError);
}

}  // namespace
}  // namespace gcgts::num
