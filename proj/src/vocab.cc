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

#include "gcgts/vocab.h"

#include <set>

#include "gcgts/errors.h"

namespace gcgts {

Vocab::Vocab(const std::vector<std::string>& reserved) {
  for (const auto& r : reserved) Add(r);
}

int Vocab::Add(const std::string& token) {
  auto [it, inserted] = index_.try_emplace(token, size());
  if (inserted) tokens_.push_back(token);
  return it->second;
}

int Vocab::Id(const std::string& token) const {
  auto it = index_.find(token);
  if (it != index_.end()) return it->second;
  auto unk = index_.find(std::string(kUnk));
  if (unk == index_.end()) {
    throw IndexError("unknown token '" + token + "' and no <unk> entry");
  }
  return unk->second;
}

Vocab Vocab::FromJson(const nlohmann::json& j) {
  Vocab v;
  for (const auto& t : j) {
    const auto token = t.get<std::string>();
    if (v.Contains(token)) {
      throw IngestionError("duplicate vocabulary entry '" + token + "'");
    }
    v.Add(token);
  }
  return v;
}

nlohmann::json Vocabs::ToJson() const {
  return {{"chars", chars.ToJson()}, {"pos", pos.ToJson()},
          {"rel", rel.ToJson()}};
}

Vocabs Vocabs::FromJson(const nlohmann::json& j) {
  Vocabs v;
  v.chars = Vocab::FromJson(j.at("chars"));
  v.pos = Vocab::FromJson(j.at("pos"));
  v.rel = Vocab::FromJson(j.at("rel"));
  for (auto r : {kUnk, kSelfRel, kNoRel}) {
    if (!v.rel.Contains(std::string(r))) {
      throw IngestionError("relation vocabulary lacks '" + std::string(r) +
                           "'");
    }
  }
  return v;
}

Vocabs BuildVocabs(const std::vector<Sentence>& sentences) {
  Vocabs v;
  v.chars = Vocab({std::string(kUnk)});
  v.pos = Vocab({std::string(kUnk)});
  v.rel = Vocab({std::string(kUnk), std::string(kSelfRel), std::string(kNoRel)});
  for (const auto& s : sentences) {
    for (const auto& c : s.chars) v.chars.Add(c);
    for (const auto& p : s.pos) v.pos.Add(p);
    for (const auto& d : s.deps) v.rel.Add(d.rel);
  }
  return v;
}

std::vector<std::string> MissingTags(const Vocabs& vocabs,
                                     const std::vector<Sentence>& sentences) {
  std::set<std::string> missing;
  for (const auto& s : sentences) {
    for (const auto& p : s.pos) {
      if (!vocabs.pos.Contains(p)) missing.insert("pos:" + p);
    }
    for (const auto& d : s.deps) {
      if (!vocabs.rel.Contains(d.rel)) missing.insert("rel:" + d.rel);
    }
  }
  return {missing.begin(), missing.end()};
}

}  // namespace gcgts
