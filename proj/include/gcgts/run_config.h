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

// Everything one command-line run needs: the model config, an optional
// ablation preset layered on top of it, corpus paths and training knobs.
//
//   {"model": {...}, "preset": "gcgts", "train": "train.jsonl",
//    "dev": "dev.jsonl", "test": "", "out": "run1", "epochs": 300,
//    "seed": 1, "eval_every": 1}

#ifndef GCGTS_RUN_CONFIG_H_
#define GCGTS_RUN_CONFIG_H_

#include <cstdint>
#include <string>

#include "gcgts/model_config.h"
#include "json.hpp"

namespace gcgts {

struct RunConfig {
  ModelConfig model;
  std::string preset;  // empty keeps the flags in `model`
  std::string train;
  std::string dev;
  std::string test;
  std::string out;     // checkpoint and log directory
  int epochs = 10;
  std::uint64_t seed = 1;
  int eval_every = 1;

  // `model` with the preset's flags applied.
  ModelConfig ResolvedModel() const;
  // Throws ValidationError naming the first broken field.
  void Validate() const;

  nlohmann::json ToJson() const;
  // Missing keys keep their defaults; unknown keys are a ValidationError.
  static RunConfig FromJson(const nlohmann::json& j);
  static RunConfig FromFile(const std::string& path);

  bool operator==(const RunConfig&) const = default;
};

}  // namespace gcgts

#endif  // GCGTS_RUN_CONFIG_H_
