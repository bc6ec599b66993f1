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

#ifndef GCGTS_VOCAB_H_
#define GCGTS_VOCAB_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gcgts/sentence.h"
#include "json.hpp"

namespace gcgts {

// Grid cell labels. The numeric values are the class indices of the model
// output and are part of the checkpoint contract.
enum class Label : std::uint8_t { kN = 0, kA = 1, kO = 2, kP = 3 };
inline constexpr int kLabelCount = 4;
inline constexpr std::array<std::string_view, kLabelCount> kLabelNames = {
    "N", "A", "O", "P"};

inline constexpr std::string_view kUnk = "<unk>";
inline constexpr std::string_view kSelfRel = "self";
inline constexpr std::string_view kNoRel = "O";

// Dense string <-> id map. Ids are assigned in insertion order from 0 and
// reserved entries are inserted first.
class Vocab {
 public:
  Vocab() = default;
  explicit Vocab(const std::vector<std::string>& reserved);

  // Id of `token`, adding it if new.
  int Add(const std::string& token);
  // Id of `token`, or the id of "<unk>" when unknown. Throws IndexError when
  // the vocabulary has no "<unk>" entry and the token is unknown.
  int Id(const std::string& token) const;
  bool Contains(const std::string& token) const {
    return index_.count(token) > 0;
  }
  const std::string& Token(int id) const { return tokens_.at(id); }
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocab& other) const { return tokens_ == other.tokens_; }

  nlohmann::json ToJson() const { return tokens_; }
  static Vocab FromJson(const nlohmann::json& j);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

struct Vocabs {
  Vocab chars;  // "<unk>" + characters
  Vocab pos;    // "<unk>" + POS tags
  Vocab rel;    // "<unk>", "self", "O" + dependency relations

  bool operator==(const Vocabs&) const = default;

  nlohmann::json ToJson() const;
  static Vocabs FromJson(const nlohmann::json& j);
};

// Vocabularies over a training split, in order of first occurrence.
Vocabs BuildVocabs(const std::vector<Sentence>& sentences);

// POS tags and dependency relations of `sentences` that `vocabs` lacks,
// formatted as "pos:TAG" and "rel:LABEL", sorted and unique. Characters are
// not checked: unseen characters have an <unk> row by design.
std::vector<std::string> MissingTags(const Vocabs& vocabs,
                                     const std::vector<Sentence>& sentences);

}  // namespace gcgts

#endif  // GCGTS_VOCAB_H_
