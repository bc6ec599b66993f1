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

#include "gcgts/parameter.h"

#include <cmath>

#include "gcgts/rng.h"

namespace gcgts::num {

template <typename T>
Parameter<T>& ParameterStore<T>::Add(const std::string& name, Shape shape,
                                     Init init) {
  if (index_.count(name)) {
    throw ContractError("duplicate parameter name '" + name + "'");
  }
  Tensor<T> value(shape);
  Rng rng = Rng::ForName(seed_, name);
  switch (init) {
    case Init::kZeros:
      break;
    case Init::kGlorot: {
      double fan_in = shape.size() >= 2 ? shape[shape.size() - 2] : 1;
      double fan_out = shape.empty() ? 1 : shape.back();
      const double bound = std::sqrt(6.0 / (fan_in + fan_out));
      for (T& v : value.data()) v = static_cast<T>(rng.Uniform(-bound, bound));
      break;
    }
    case Init::kNormal:
      for (T& v : value.data()) v = static_cast<T>(rng.Normal());
      break;
  }
  index_[name] = params_.size();
  params_.push_back(Parameter<T>{name, std::move(value), Tensor<T>(shape)});
  return params_.back();
}

template <typename T>
Parameter<T>& ParameterStore<T>::Get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw ContractError("no parameter '" + name + "'");
  return params_[it->second];
}

template <typename T>
const Parameter<T>& ParameterStore<T>::Get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ContractError("no parameter '" + name + "'");
  return params_[it->second];
}

template <typename T>
std::vector<std::string> ParameterStore<T>::Names() const {
  std::vector<std::string> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.push_back(p.name);
  return out;
}

template <typename T>
void ParameterStore<T>::ZeroGrad() {
  for (auto& p : params_) p.grad.Fill(T(0));
}

template <typename T>
std::size_t ParameterStore<T>::TotalElements() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

template class ParameterStore<float>;
template class ParameterStore<double>;

}  // namespace gcgts::num
