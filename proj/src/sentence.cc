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

#include "gcgts/sentence.h"

#include <algorithm>

#include "gcgts/errors.h"

namespace gcgts {
namespace {

void Fail(const std::string& rule, const std::string& detail = "") {
  throw ValidationError(detail.empty() ? rule : rule + " (" + detail + ")");
}

std::string SpanText(Span s) {
  return "[" + std::to_string(s.start) + "," + std::to_string(s.end) + ")";
}

void CheckAnnotation(const Sentence& s, Span span,
                     const std::vector<bool>& word_start,
                     const std::vector<bool>& word_end) {
  const int n = s.size();
  if (span.start < 0 || span.end > n || span.start >= span.end) {
    Fail("annotation span out of range", SpanText(span));
  }
  if (!word_start[span.start] || !word_end[span.end]) {
    Fail("annotation span not word-aligned", SpanText(span));
  }
}

}  // namespace

int Sentence::WordOf(int c) const {
  auto it = std::upper_bound(
      words.begin(), words.end(), c,
      [](int value, const Span& w) { return value < w.start; });
  return static_cast<int>(it - words.begin()) - 1;
}

std::string Sentence::Text(Span span) const {
  std::string out;
  for (int i = span.start; i < span.end; ++i) out += chars[i];
  return out;
}

void Validate(const Sentence& s) {
  const int n = s.size();
  if (n == 0 || s.words.empty()) Fail("empty sentence");
  for (const auto& c : s.chars) {
    if (c.empty()) Fail("empty character");
  }

  int expected = 0;
  for (const Span& w : s.words) {
    if (w.start < 0 || w.end > n || w.start >= w.end) {
      Fail("word span out of range", SpanText(w));
    }
    if (w.start < expected) Fail("overlapping word spans", SpanText(w));
    if (w.start > expected) Fail("gap in word spans", SpanText(w));
    expected = w.end;
  }
  if (expected != n) Fail("gap in word spans", "words end before the last char");

  const int nw = s.num_words();
  if (static_cast<int>(s.pos.size()) != nw) {
    Fail("pos count does not match words");
  }
  if (static_cast<int>(s.deps.size()) != nw) {
    Fail("dependency count does not match words");
  }
  int roots = 0;
  for (int w = 0; w < nw; ++w) {
    const int head = s.deps[w].head;
    if (head == kRootHead) {
      ++roots;
    } else if (head < 0 || head >= nw) {
      Fail("dependency head out of range", "word " + std::to_string(w));
    } else if (head == w) {
      Fail("word heads itself", "word " + std::to_string(w));
    }
  }
  if (roots == 0) Fail("no ROOT word");
  if (roots > 1) Fail("multiple ROOT words");
  for (int w = 0; w < nw; ++w) {
    int cur = w;
    for (int steps = 0; cur != kRootHead; ++steps) {
      if (steps > nw) Fail("dependency cycle", "word " + std::to_string(w));
      cur = s.deps[cur].head;
    }
  }

  std::vector<bool> word_start(n + 1, false), word_end(n + 1, false);
  for (const Span& w : s.words) {
    word_start[w.start] = true;
    word_end[w.end] = true;
  }
  for (const Span& a : s.aspects) CheckAnnotation(s, a, word_start, word_end);
  for (const Span& o : s.opinions) CheckAnnotation(s, o, word_start, word_end);
  for (const auto& [a, o] : s.pairs) {
    if (a < 0 || a >= static_cast<int>(s.aspects.size()) || o < 0 ||
        o >= static_cast<int>(s.opinions.size())) {
      Fail("pair index out of range",
           "(" + std::to_string(a) + "," + std::to_string(o) + ")");
    }
  }
}

}  // namespace gcgts
