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

#include "gcgts/adam.h"

#include <cmath>

namespace gcgts::num {

template <typename T>
void Adam<T>::Step(ParameterStore<T>& store) {
  for (const auto& p : store) {
    if (p.requires_grad && p.grad.shape() != p.value.shape()) {
      throw ContractError("adam: parameter '" + p.name +
                          "' has no gradient of shape " +
                          ShapeString(p.value.shape()));
    }
  }
  ++steps_;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  const T lr = static_cast<T>(options_.lr);
  for (auto& p : store) {
    if (!p.requires_grad) continue;
    auto [it, fresh] = state_.try_emplace(p.name);
    if (fresh) {
      it->second.m = Tensor<T>(p.value.shape());
      it->second.v = Tensor<T>(p.value.shape());
    }
    auto m = it->second.m.data();
    auto v = it->second.v.data();
    auto g = p.grad.data();
    auto w = p.value.data();
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = static_cast<T>(b1 * m[i] + (1.0 - b1) * g[i]);
      v[i] = static_cast<T>(b2 * v[i] + (1.0 - b2) * g[i] * g[i]);
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      w[i] -= static_cast<T>(lr * m_hat / (std::sqrt(v_hat) + options_.eps));
    }
  }
}

template class Adam<float>;
template class Adam<double>;

}  // namespace gcgts::num
