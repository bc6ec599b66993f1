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

#ifndef GCGTS_ADAM_H_
#define GCGTS_ADAM_H_

#include <map>
#include <string>

#include "gcgts/parameter.h"

namespace gcgts::num {

struct AdamOptions {
  double lr = 5e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam over every requires_grad parameter of a store.
template <typename T>
class Adam {
 public:
  struct Moments {
    Tensor<T> m;
    Tensor<T> v;
  };

  explicit Adam(AdamOptions options = {}) : options_(options) {}

  // One update using the gradients currently held by the store. A parameter
  // whose grad does not match its value shape is a ContractError.
  void Step(ParameterStore<T>& store);

  long steps() const { return steps_; }
  const Moments& moments(const std::string& name) const {
    return state_.at(name);
  }
  const AdamOptions& options() const { return options_; }

 private:
  AdamOptions options_;
  long steps_ = 0;
  std::map<std::string, Moments> state_;
};

}  // namespace gcgts::num

#endif  // GCGTS_ADAM_H_
