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

// Character-pair grids derived from a sentence: the dependency relation
// matrix that drives the graph encoder, and the gold tagging grid.

#ifndef GCGTS_GRID_H_
#define GCGTS_GRID_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gcgts/sentence.h"
#include "gcgts/vocab.h"

namespace gcgts {

// Which characters carry supervision. kFirstChar keeps only word-initial
// characters; kAllChar keeps every character.
enum class TagMode { kFirstChar, kAllChar };

std::string_view TagModeName(TagMode mode);
// Accepts "first-char" / "all-char"; throws ValidationError otherwise.
TagMode ParseTagMode(std::string_view name);

// n x n relation types between characters. Same word -> "self"; words joined
// by a dependency arc (either direction) -> the arc's relation; else "O".
struct CharGraph {
  int n = 0;
  std::vector<std::string> rel;      // row-major n*n
  std::vector<std::uint8_t> adjacent;  // 1 iff rel != "O"

  const std::string& Relation(int i, int j) const { return rel[i * n + j]; }
  bool Adjacent(int i, int j) const { return adjacent[i * n + j] != 0; }
};

CharGraph CharRelationMatrix(const Sentence& sentence);

// Relation ids of a graph under `rel` (unknown relations map to <unk>).
std::vector<int> RelationIds(const CharGraph& graph, const Vocab& rel);

// Upper-triangular label grid. Cells with mask 0 carry no label (kN).
struct LabelGrid {
  int n = 0;
  std::vector<Label> labels;       // row-major n*n
  std::vector<std::uint8_t> mask;  // row-major n*n

  Label At(int i, int j) const { return labels[i * n + j]; }
  bool Supervised(int i, int j) const { return mask[i * n + j] != 0; }
  int MaskedCount() const;

  bool operator==(const LabelGrid&) const = default;
};

// Characters that carry supervision under `mode`, ascending.
std::vector<int> SupervisedPositions(const Sentence& sentence, TagMode mode);

// mask[i][j] = 1 iff i <= j and both i and j are supervised positions.
std::vector<std::uint8_t> SupervisionMask(const Sentence& sentence,
                                          TagMode mode);

// Gold labels with precedence P > A > O > N per cell. Spans outside the
// sentence throw ValidationError.
LabelGrid EncodeGoldGrid(const Sentence& sentence, TagMode mode);

}  // namespace gcgts

#endif  // GCGTS_GRID_H_
