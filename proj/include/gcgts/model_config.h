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

// Model hyperparameters, ablation switches and their JSON form.

#ifndef GCGTS_MODEL_CONFIG_H_
#define GCGTS_MODEL_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "gcgts/grid.h"
#include "gcgts/lagcn.h"
#include "json.hpp"

namespace gcgts {

enum class EncoderKind { kTrainable, kFileBacked };

std::string_view EncoderKindName(EncoderKind kind);
EncoderKind ParseEncoderKind(std::string_view name);

struct ModelConfig {
  int d_h = 128;
  int d_r = 8;
  int d_p = 8;
  int d_beta = 16;
  int d_g = 64;
  int d_z = 64;
  int layers = 2;
  int rounds = 2;
  std::vector<int> kernels = {2, 3};
  TagMode mode = TagMode::kFirstChar;
  bool use_lagcn = true;
  bool use_b_tensor = true;
  bool use_uc = true;
  bool use_ic = true;
  EncoderKind encoder = EncoderKind::kTrainable;
  std::string vectors;  // sidecar path for the file-backed encoder
  double lr = 5e-5;
  int batch_size = 12;
  int label_count = 4;

  LagcnDims lagcn_dims() const { return {d_h, d_r, d_p, d_beta, layers}; }

  // Throws ValidationError naming the first broken invariant.
  void Validate() const;

  nlohmann::json ToJson() const;
  // Missing keys keep their defaults; unknown keys are a ValidationError.
  static ModelConfig FromJson(const nlohmann::json& j);

  bool operator==(const ModelConfig&) const = default;
};

// The six ablation arms: gts, gts-uc, gts-ic, dgts, dbgts, gcgts.
const std::vector<std::string>& PresetNames();
// Sets the four flags of `preset`; throws ValidationError on unknown names.
void ApplyPreset(ModelConfig& config, std::string_view preset);

}  // namespace gcgts

#endif  // GCGTS_MODEL_CONFIG_H_
