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

// Brute-force decoder used as a test oracle. It enumerates every interval of
// supervised positions, keeps the maximal single-label ones, and checks every
// (aspect, opinion) interval pair cell by cell for a P label. It shares no
// code with DecodeGrid beyond the supervised-position list.

#ifndef GCGTS_TESTS_DECODE_ORACLE_H_
#define GCGTS_TESTS_DECODE_ORACLE_H_

#include <algorithm>
#include <span>
#include <vector>

#include "gcgts/decode.h"

namespace gcgts::testing {

inline ExtractionResult OracleDecode(std::span<const Label> labels,
                                     const Sentence& s, TagMode mode) {
  const int n = s.size();
  const std::vector<int> pos = SupervisedPositions(s, mode);
  const int m = static_cast<int>(pos.size());
  auto cell = [&](int a, int b) {
    const int lo = std::min(pos[a], pos[b]), hi = std::max(pos[a], pos[b]);
    return labels[lo * n + hi];
  };
  auto word_span = [&](int a, int b) {
    int first = 0, last = 0;
    for (int w = 0; w < s.num_words(); ++w) {
      if (s.words[w].Contains(pos[a])) first = s.words[w].start;
      if (s.words[w].Contains(pos[b])) last = s.words[w].end;
    }
    return Span{first, last};
  };
  struct Interval {
    int a, b;
  };
  std::vector<Interval> aspects, opinions;
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      for (Label l : {Label::kA, Label::kO}) {
        bool uniform = true;
        for (int k = a; k <= b; ++k) uniform = uniform && cell(k, k) == l;
        const bool left_closed = a == 0 || cell(a - 1, a - 1) != l;
        const bool right_closed = b == m - 1 || cell(b + 1, b + 1) != l;
        if (uniform && left_closed && right_closed) {
          (l == Label::kA ? aspects : opinions).push_back({a, b});
        }
      }
    }
  }
  ExtractionResult r;
  for (auto iv : aspects) r.aspects.insert(word_span(iv.a, iv.b));
  for (auto iv : opinions) r.opinions.insert(word_span(iv.a, iv.b));
  for (auto ia : aspects) {
    for (auto io : opinions) {
      bool linked = false;
      for (int x = ia.a; x <= ia.b; ++x) {
        for (int y = io.a; y <= io.b; ++y) linked = linked || cell(x, y) == Label::kP;
      }
      if (linked) r.pairs.emplace(word_span(ia.a, ia.b), word_span(io.a, io.b));
    }
  }
  return r;
}

}  // namespace gcgts::testing

#endif  // GCGTS_TESTS_DECODE_ORACLE_H_
