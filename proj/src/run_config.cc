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

#include "gcgts/run_config.h"

#include <fstream>
#include <set>

#include "gcgts/errors.h"

namespace gcgts {
namespace {

template <typename V>
void Read(const nlohmann::json& j, const char* key, V& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<V>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("run config: bad value for \"") + key +
                          "\"");
  }
}

}  // namespace

ModelConfig RunConfig::ResolvedModel() const {
  ModelConfig m = model;
  if (!preset.empty()) ApplyPreset(m, preset);
  return m;
}

void RunConfig::Validate() const {
  ResolvedModel().Validate();
  if (epochs < 0) throw ValidationError("run config: epochs must be >= 0");
  if (eval_every < 1) {
    throw ValidationError("run config: eval_every must be >= 1");
  }
}

nlohmann::json RunConfig::ToJson() const {
  return {{"model", model.ToJson()}, {"preset", preset},   {"train", train},
          {"dev", dev},              {"test", test},       {"out", out},
          {"epochs", epochs},        {"seed", seed},       {"eval_every", eval_every}};
}

RunConfig RunConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("run config: expected a JSON object");
  static const std::set<std::string> kKeys = {
      "model", "preset", "train", "dev", "test", "out", "epochs", "seed",
      "eval_every"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) {
      throw ValidationError("run config: unknown key \"" + key + "\"");
    }
  }
  RunConfig c;
  if (j.contains("model")) c.model = ModelConfig::FromJson(j.at("model"));
  Read(j, "preset", c.preset);
  Read(j, "train", c.train);
  Read(j, "dev", c.dev);
  Read(j, "test", c.test);
  Read(j, "out", c.out);
  Read(j, "epochs", c.epochs);
  Read(j, "seed", c.seed);
  Read(j, "eval_every", c.eval_every);
  return c;
}

RunConfig RunConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("run config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("run config: " + path + ": " + e.what());
  }
  return FromJson(j);
}

}  // namespace gcgts
