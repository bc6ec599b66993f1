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

// Character-level sentence with its word segmentation, parser output and
// aspect/opinion annotations. All spans are half-open character intervals.

#ifndef GCGTS_SENTENCE_H_
#define GCGTS_SENTENCE_H_

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace gcgts {

struct Span {
  int start = 0;
  int end = 0;  // exclusive

  int length() const { return end - start; }
  bool Contains(int i) const { return i >= start && i < end; }
  auto operator<=>(const Span&) const = default;
};

inline constexpr int kRootHead = -1;

struct Dependency {
  int head = kRootHead;  // word index, or kRootHead
  std::string rel;
  bool operator==(const Dependency&) const = default;
};

struct Sentence {
  std::string id;  // optional; used to key external vector files
  std::vector<std::string> chars;
  std::vector<Span> words;
  std::vector<std::string> pos;   // one per word
  std::vector<Dependency> deps;   // one per word
  std::vector<Span> aspects;
  std::vector<Span> opinions;
  std::vector<std::pair<int, int>> pairs;  // (aspect index, opinion index)

  int size() const { return static_cast<int>(chars.size()); }
  int num_words() const { return static_cast<int>(words.size()); }

  // Index of the word containing character `c`. Requires a valid sentence.
  int WordOf(int c) const;
  // Characters [start, end) joined.
  std::string Text(Span span) const;
  std::string Text() const { return Text({0, size()}); }

  bool operator==(const Sentence&) const = default;
};

// Throws ValidationError naming the first violated rule:
//   "empty sentence", "empty character", "word span out of range",
//   "overlapping word spans", "gap in word spans",
//   "pos count does not match words", "dependency count does not match words",
//   "dependency head out of range", "word heads itself", "no ROOT word",
//   "multiple ROOT words", "dependency cycle",
//   "annotation span out of range", "annotation span not word-aligned",
//   "pair index out of range".
void Validate(const Sentence& sentence);

}  // namespace gcgts

#endif  // GCGTS_SENTENCE_H_
