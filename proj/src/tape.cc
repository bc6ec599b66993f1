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

#include "gcgts/tape.h"

namespace gcgts::num {

template <typename T>
Var<T> Tape<T>::Constant(Tensor<T> value) {
  nodes_.push_back(Node{std::move(value), {}, {}, nullptr, nullptr, false});
  return Var<T>(this, nodes_.size() - 1);
}

template <typename T>
Var<T> Tape<T>::Leaf(Tensor<T> value) {
  nodes_.push_back(Node{std::move(value), {}, {}, nullptr, nullptr, true});
  return Var<T>(this, nodes_.size() - 1);
}

template <typename T>
Var<T> Tape<T>::Param(Parameter<T>& p) {
  nodes_.push_back(Node{p.value, {}, {}, nullptr, &p, p.requires_grad});
  return Var<T>(this, nodes_.size() - 1);
}

template <typename T>
Var<T> Tape<T>::Record(Tensor<T> value, std::vector<std::size_t> parents,
                       BackwardFn backward) {
  bool needs = false;
  for (std::size_t p : parents) {
    if (p >= nodes_.size()) {
      throw ContractError("operation input is not on this tape");
    }
    needs = needs || nodes_[p].requires_grad;
  }
  nodes_.push_back(Node{std::move(value), {}, std::move(parents),
                        needs ? std::move(backward) : nullptr, nullptr,
                        needs});
  return Var<T>(this, nodes_.size() - 1);
}

template <typename T>
Tensor<T>& Tape<T>::MutableGrad(std::size_t id) {
  Node& node = nodes_[id];
  if (node.grad.shape() != node.value.shape() || node.grad.empty()) {
    node.grad = Tensor<T>(node.value.shape());
  }
  return node.grad;
}

template <typename T>
void Tape<T>::Backward(const Var<T>& loss) {
  if (loss.tape() != this) {
    throw ContractError("loss was not recorded on this tape");
  }
  if (backward_done_) {
    throw ContractError("backward already ran on this tape; Reset() first");
  }
  if (loss.value().size() != 1) {
    throw ContractError("backward needs a scalar loss, got shape " +
                        ShapeString(loss.shape()));
  }
  backward_done_ = true;
  MutableGrad(loss.id())[0] = T(1);
  for (std::size_t id = loss.id() + 1; id-- > 0;) {
    Node& node = nodes_[id];
    if (!node.requires_grad || node.grad.empty()) continue;
    if (node.backward) node.backward(*this, id);
    if (node.sink != nullptr) {
      auto dst = node.sink->grad.data();
      auto src = nodes_[id].grad.data();
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
    }
  }
}

template <typename T>
void Tape<T>::Reset() {
  nodes_.clear();
  backward_done_ = false;
}

template class Tape<float>;
template class Tape<double>;

}  // namespace gcgts::num
