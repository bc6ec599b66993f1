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

// Grid decoding and exact-match scoring.
//
// Decoding reads only supervised cells. Aspect (opinion) terms are maximal
// runs of consecutive supervised positions whose diagonal cell is A (O),
// widened to whole words. A pair is emitted when at least one cell linking a
// position of the aspect run to a position of the opinion run is P.

#ifndef GCGTS_DECODE_H_
#define GCGTS_DECODE_H_

#include <set>
#include <span>
#include <utility>
#include <vector>

#include "gcgts/grid.h"
#include "gcgts/sentence.h"
#include "json.hpp"

namespace gcgts {

struct ExtractionResult {
  std::set<Span> aspects;
  std::set<Span> opinions;
  std::set<std::pair<Span, Span>> pairs;  // (aspect, opinion)

  bool empty() const {
    return aspects.empty() && opinions.empty() && pairs.empty();
  }
  bool operator==(const ExtractionResult&) const = default;
};

// The annotations of `s` as a result set.
ExtractionResult GoldExtraction(const Sentence& s);

// `labels` is the row-major n x n grid; unsupervised cells are ignored.
ExtractionResult DecodeGrid(std::span<const Label> labels, const Sentence& s,
                            TagMode mode);
inline ExtractionResult DecodeGrid(const LabelGrid& grid, const Sentence& s,
                                   TagMode mode) {
  return DecodeGrid(grid.labels, s, mode);
}

// JSON with spans and surface strings, one object per sentence:
// {"text":..., "aspects":[{"span":[s,e],"text":...}], "opinions":[...],
//  "pairs":[{"aspect":{...},"opinion":{...}}]}
nlohmann::json ExtractionToJson(const ExtractionResult& r, const Sentence& s);

struct Prf {
  long tp = 0;
  long predicted = 0;
  long gold = 0;

  double precision() const {
    return predicted == 0 ? 0.0 : static_cast<double>(tp) / predicted;
  }
  double recall() const {
    return gold == 0 ? 0.0 : static_cast<double>(tp) / gold;
  }
  double f1() const {
    const double p = precision(), r = recall();
    return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
  }
};

// Micro-averaged exact-match metrics over a corpus.
struct Metrics {
  Prf pair;
  Prf aspect;
  Prf opinion;
  int n_sentences = 0;

  void Add(const ExtractionResult& predicted, const ExtractionResult& gold);

  // {"pair":{"p":..,"r":..,"f1":..},"aspect":{..},"opinion":{..},
  //  "n_sentences":..}
  nlohmann::json ToJson() const;
};

Metrics Score(const std::vector<ExtractionResult>& predicted,
              const std::vector<ExtractionResult>& gold);

}  // namespace gcgts

#endif  // GCGTS_DECODE_H_
