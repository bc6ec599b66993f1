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

#ifndef GCGTS_PARAMETER_H_
#define GCGTS_PARAMETER_H_

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "gcgts/tensor.h"

namespace gcgts::num {

enum class Init {
  kZeros,
  kGlorot,  // Uniform(-sqrt(6/(fan_in+fan_out)), +...) on the last two dims
  kNormal,  // N(0, 1), for embedding tables
};

// A trainable leaf. grad always has the shape of value.
template <typename T>
struct Parameter {
  std::string name;
  Tensor<T> value;
  Tensor<T> grad;
  bool requires_grad = true;
};

// Named parameters in registration order. Addresses are stable for the
// lifetime of the store, so tapes may hold Parameter pointers.
template <typename T>
class ParameterStore {
 public:
  explicit ParameterStore(std::uint64_t seed = 0) : seed_(seed) {}
  ParameterStore(const ParameterStore&) = delete;
  ParameterStore& operator=(const ParameterStore&) = delete;
  ParameterStore(ParameterStore&&) = default;
  ParameterStore& operator=(ParameterStore&&) = default;

  // Registers a parameter initialized from a per-name stream of the store
  // seed. Duplicate names are a ContractError.
  Parameter<T>& Add(const std::string& name, Shape shape, Init init);

  Parameter<T>& Get(const std::string& name);
  const Parameter<T>& Get(const std::string& name) const;
  bool Contains(const std::string& name) const {
    return index_.count(name) > 0;
  }

  std::vector<std::string> Names() const;
  std::size_t size() const { return params_.size(); }
  std::uint64_t seed() const { return seed_; }

  void ZeroGrad();
  std::size_t TotalElements() const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::uint64_t seed_;
  std::deque<Parameter<T>> params_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace gcgts::num

#endif  // GCGTS_PARAMETER_H_
