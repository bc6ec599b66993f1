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

#include "gcgts/grid.h"

#include <algorithm>

#include "gcgts/errors.h"

namespace gcgts {
namespace {

// Higher wins when two annotations claim the same cell.
int Precedence(Label l) {
  switch (l) {
    case Label::kN: return 0;
    case Label::kO: return 1;
    case Label::kA: return 2;
    case Label::kP: return 3;
  }
  return 0;
}

void Assign(LabelGrid& grid, int i, int j, Label l) {
  const int a = std::min(i, j), b = std::max(i, j);
  const int idx = a * grid.n + b;
  if (!grid.mask[idx]) return;
  if (Precedence(l) > Precedence(grid.labels[idx])) grid.labels[idx] = l;
}

void CheckSpan(const Sentence& s, Span span) {
  if (span.start < 0 || span.end > s.size() || span.start >= span.end) {
    throw ValidationError("annotation span out of range [" +
                          std::to_string(span.start) + "," +
                          std::to_string(span.end) + ")");
  }
}

}  // namespace

std::string_view TagModeName(TagMode mode) {
  return mode == TagMode::kFirstChar ? "first-char" : "all-char";
}

TagMode ParseTagMode(std::string_view name) {
  if (name == "first-char") return TagMode::kFirstChar;
  if (name == "all-char") return TagMode::kAllChar;
  throw ValidationError("unknown tagging mode '" + std::string(name) + "'");
}

CharGraph CharRelationMatrix(const Sentence& s) {
  const int n = s.size();
  const int nw = s.num_words();
  // Undirected word-level relation table.
  std::vector<std::string> word_rel(nw * nw, std::string(kNoRel));
  for (int w = 0; w < nw; ++w) {
    const int h = s.deps[w].head;
    if (h == kRootHead) continue;
    word_rel[w * nw + h] = s.deps[w].rel;
    word_rel[h * nw + w] = s.deps[w].rel;
  }
  std::vector<int> word_of(n);
  for (int w = 0; w < nw; ++w) {
    for (int c = s.words[w].start; c < s.words[w].end; ++c) word_of[c] = w;
  }
  CharGraph g;
  g.n = n;
  g.rel.resize(n * n);
  g.adjacent.resize(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int wi = word_of[i], wj = word_of[j];
      std::string& r = g.rel[i * n + j];
      r = wi == wj ? std::string(kSelfRel) : word_rel[wi * nw + wj];
      g.adjacent[i * n + j] = r != kNoRel;
    }
  }
  return g;
}

std::vector<int> RelationIds(const CharGraph& graph, const Vocab& rel) {
  std::vector<int> ids(graph.rel.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = rel.Id(graph.rel[i]);
  return ids;
}

int LabelGrid::MaskedCount() const {
  return static_cast<int>(std::count(mask.begin(), mask.end(), 1));
}

std::vector<int> SupervisedPositions(const Sentence& s, TagMode mode) {
  std::vector<int> out;
  if (mode == TagMode::kAllChar) {
    for (int i = 0; i < s.size(); ++i) out.push_back(i);
  } else {
    for (const Span& w : s.words) out.push_back(w.start);
  }
  return out;
}

std::vector<std::uint8_t> SupervisionMask(const Sentence& s, TagMode mode) {
  const int n = s.size();
  std::vector<std::uint8_t> mask(n * n, 0);
  const auto pos = SupervisedPositions(s, mode);
  for (std::size_t a = 0; a < pos.size(); ++a) {
    for (std::size_t b = a; b < pos.size(); ++b) {
      mask[pos[a] * n + pos[b]] = 1;
    }
  }
  return mask;
}

LabelGrid EncodeGoldGrid(const Sentence& s, TagMode mode) {
  LabelGrid grid;
  grid.n = s.size();
  grid.labels.assign(grid.n * grid.n, Label::kN);
  grid.mask = SupervisionMask(s, mode);
  auto fill_square = [&](Span span, Label l) {
    CheckSpan(s, span);
    for (int i = span.start; i < span.end; ++i) {
      for (int j = i; j < span.end; ++j) Assign(grid, i, j, l);
    }
  };
  for (const Span& a : s.aspects) fill_square(a, Label::kA);
  for (const Span& o : s.opinions) fill_square(o, Label::kO);
  for (const auto& [ai, oi] : s.pairs) {
    const Span a = s.aspects.at(ai), o = s.opinions.at(oi);
    for (int i = a.start; i < a.end; ++i) {
      for (int j = o.start; j < o.end; ++j) Assign(grid, i, j, Label::kP);
    }
  }
  return grid;
}

}  // namespace gcgts
