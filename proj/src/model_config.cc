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

#include "gcgts/model_config.h"

#include <algorithm>
#include <set>

#include "gcgts/errors.h"

namespace gcgts {
namespace {

struct Preset {
  const char* name;
  bool lagcn, b, uc, ic;
};

constexpr Preset kPresets[] = {
    {"gts", false, false, false, false},  {"gts-uc", false, false, true, false},
    {"gts-ic", false, false, false, true}, {"dgts", true, false, false, false},
    {"dbgts", true, true, false, false},   {"gcgts", true, true, true, true},
};

void Require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("config: " + what);
}

template <typename V>
void Read(const nlohmann::json& j, const char* key, V& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<V>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("config: bad value for \"") + key + "\"");
  }
}

}  // namespace

std::string_view EncoderKindName(EncoderKind kind) {
  return kind == EncoderKind::kTrainable ? "trainable-embedding" : "file-backed";
}

EncoderKind ParseEncoderKind(std::string_view name) {
  if (name == "trainable-embedding") return EncoderKind::kTrainable;
  if (name == "file-backed") return EncoderKind::kFileBacked;
  throw ValidationError("config: unknown encoder \"" + std::string(name) + "\"");
}

void ModelConfig::Validate() const {
  Require(d_h > 0 && d_r > 0 && d_p > 0 && d_beta > 0 && d_g > 0 && d_z > 0,
          "dimensions must be positive");
  Require(d_h % 4 == 0, "d_h must be divisible by 4");
  Require(layers >= 1, "layers must be >= 1");
  Require(rounds >= 0, "rounds must be >= 0");
  Require(!use_b_tensor || use_lagcn, "use_b_tensor requires use_lagcn");
  Require(label_count == kLabelCount, "label_count must be 4");
  Require(lr > 0, "lr must be positive");
  Require(batch_size >= 1, "batch_size must be >= 1");
  std::set<int> seen;
  for (int k : kernels) {
    Require(k >= 2, "kernel lengths must be >= 2");
    Require(seen.insert(k).second, "duplicate kernel length");
  }
  Require(!use_ic || !kernels.empty(), "use_ic needs at least one kernel");
  Require(encoder != EncoderKind::kFileBacked || !vectors.empty(),
          "file-backed encoder needs a vectors path");
}

nlohmann::json ModelConfig::ToJson() const {
  return {{"d_h", d_h},
          {"d_r", d_r},
          {"d_p", d_p},
          {"d_beta", d_beta},
          {"d_g", d_g},
          {"d_z", d_z},
          {"layers", layers},
          {"rounds", rounds},
          {"kernels", kernels},
          {"mode", TagModeName(mode)},
          {"use_lagcn", use_lagcn},
          {"use_b_tensor", use_b_tensor},
          {"use_uc", use_uc},
          {"use_ic", use_ic},
          {"encoder", EncoderKindName(encoder)},
          {"vectors", vectors},
          {"lr", lr},
          {"batch_size", batch_size},
          {"label_count", label_count}};
}

ModelConfig ModelConfig::FromJson(const nlohmann::json& j) {
  Require(j.is_object(), "expected a JSON object");
  static const std::set<std::string> kKeys = {
      "d_h",    "d_r",          "d_p",    "d_beta", "d_g",     "d_z",
      "layers", "rounds",       "kernels", "mode",  "use_lagcn",
      "use_b_tensor", "use_uc", "use_ic", "encoder", "vectors", "lr",
      "batch_size", "label_count"};
  for (const auto& [key, value] : j.items()) {
    Require(kKeys.count(key) > 0, "unknown key \"" + key + "\"");
  }
  ModelConfig c;
  Read(j, "d_h", c.d_h);
  Read(j, "d_r", c.d_r);
  Read(j, "d_p", c.d_p);
  Read(j, "d_beta", c.d_beta);
  Read(j, "d_g", c.d_g);
  Read(j, "d_z", c.d_z);
  Read(j, "layers", c.layers);
  Read(j, "rounds", c.rounds);
  Read(j, "kernels", c.kernels);
  std::string mode(TagModeName(c.mode)), encoder(EncoderKindName(c.encoder));
  Read(j, "mode", mode);
  Read(j, "encoder", encoder);
  c.mode = ParseTagMode(mode);
  c.encoder = ParseEncoderKind(encoder);
  Read(j, "use_lagcn", c.use_lagcn);
  Read(j, "use_b_tensor", c.use_b_tensor);
  Read(j, "use_uc", c.use_uc);
  Read(j, "use_ic", c.use_ic);
  Read(j, "vectors", c.vectors);
  Read(j, "lr", c.lr);
  Read(j, "batch_size", c.batch_size);
  Read(j, "label_count", c.label_count);
  return c;
}

const std::vector<std::string>& PresetNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Preset& p : kPresets) out.emplace_back(p.name);
    return out;
  }();
  return names;
}

void ApplyPreset(ModelConfig& config, std::string_view preset) {
  for (const Preset& p : kPresets) {
    if (preset != p.name) continue;
    config.use_lagcn = p.lagcn;
    config.use_b_tensor = p.b;
    config.use_uc = p.uc;
    config.use_ic = p.ic;
    return;
  }
  throw ValidationError("unknown preset \"" + std::string(preset) + "\"");
}

}  // namespace gcgts
