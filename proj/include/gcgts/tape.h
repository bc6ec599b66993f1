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

// Reverse-mode gradient tape.
//
// Every operation appends one node holding its output value, the ids of its
// inputs and a closure that maps the node's output gradient onto its inputs'
// gradients. Nodes are only ever appended, so parents always precede their
// children and a single reverse sweep over the node list is a valid
// topological order for backpropagation.
//
//   num::Tape<float> tape;
//   auto w = tape.Param(store.Get("w"));
//   auto x = tape.Constant(input);
//   auto loss = num::Sum(num::MatMul(x, w));
//   tape.Backward(loss);   // store.Get("w").grad now holds d loss / d w

#ifndef GCGTS_TAPE_H_
#define GCGTS_TAPE_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "gcgts/parameter.h"
#include "gcgts/tensor.h"

namespace gcgts::num {

template <typename T>
class Tape;

// Handle to a node on a tape. Cheap to copy; valid while the tape is alive
// and has not been Reset().
template <typename T>
class Var {
 public:
  Var() = default;
  Var(Tape<T>* tape, std::size_t id) : tape_(tape), id_(id) {}

  const Tensor<T>& value() const { return tape_->value(id_); }
  const Tensor<T>& grad() const { return tape_->grad(id_); }
  const Shape& shape() const { return value().shape(); }
  std::size_t id() const { return id_; }
  Tape<T>* tape() const { return tape_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  Tape<T>* tape_ = nullptr;
  std::size_t id_ = 0;
};

template <typename T>
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // A value that never receives a gradient.
  Var<T> Constant(Tensor<T> value);
  // A free-standing differentiable input; its gradient is read via Var::grad.
  Var<T> Leaf(Tensor<T> value);
  // A parameter; Backward accumulates into p.grad.
  Var<T> Param(Parameter<T>& p);

  // Appends an operation node. Used by the op library.
  Var<T> Record(Tensor<T> value, std::vector<std::size_t> parents,
                BackwardFn backward);

  // Propagates d loss / d node to every node that requires a gradient.
  // The loss must be a one-element tensor. May only be called once per
  // recording; Reset() starts a new one.
  void Backward(const Var<T>& loss);

  void Reset();

  std::size_t size() const { return nodes_.size(); }
  bool backward_done() const { return backward_done_; }

  const Tensor<T>& value(std::size_t id) const { return nodes_[id].value; }
  const Tensor<T>& grad(std::size_t id) const { return nodes_[id].grad; }
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  const std::vector<std::size_t>& parents(std::size_t id) const {
    return nodes_[id].parents;
  }

  // Gradient buffer of a node, zero-allocated on first use.
  Tensor<T>& MutableGrad(std::size_t id);

 private:
  struct Node {
    Tensor<T> value;
    Tensor<T> grad;
    std::vector<std::size_t> parents;
    BackwardFn backward;
    Parameter<T>* sink = nullptr;
    bool requires_grad = false;
  };

  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

}  // namespace gcgts::num

#endif  // GCGTS_TAPE_H_
