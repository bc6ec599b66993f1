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

#ifndef GCGTS_TESTS_FIXTURES_H_
#define GCGTS_TESTS_FIXTURES_H_

#include <algorithm>
#include <string>

#include "gcgts/corpus_io.h"
#include "gcgts/rng.h"
#include "gcgts/sentence.h"

namespace gcgts::testing {

// "原材料 价格 上涨 。": aspect 原材料价格, opinion 上涨.
inline const char* kRawMaterialJson =
    R"({"chars":["原","材","料","价","格","上","涨","。"],)"
    R"("words":[[0,3],[3,5],[5,7],[7,8]],"pos":["NN","NN","VV","PU"],)"
    R"("deps":[{"head":1,"rel":"nmod"},{"head":2,"rel":"nsubj"},)"
    R"({"head":-1,"rel":"root"},{"head":2,"rel":"punct"}],)"
    R"("aspects":[[0,5]],"opinions":[[5,7]],"pairs":[[0,0]]})";

inline Sentence RawMaterialSentence() {
  return SentenceFromJson(nlohmann::json::parse(kRawMaterialJson));
}

// Sentence of single-character words with a chain dependency tree and no
// annotations; handy for exercising arbitrary grids.
inline Sentence CharWordSentence(int n) {
  Sentence s;
  for (int i = 0; i < n; ++i) {
    s.chars.push_back(std::string(1, static_cast<char>('a' + i % 26)));
    s.words.push_back(Span{i, i + 1});
    s.pos.push_back(i % 2 ? "NN" : "VV");
    s.deps.push_back(Dependency{i == 0 ? kRootHead : i - 1, "dep"});
  }
  return s;
}

// Random segmentation of n characters into words of 1-3 characters with a
// random tree (heads drawn from earlier words).
inline Sentence RandomSegmentedSentence(Rng& rng, int n) {
  Sentence s;
  for (int i = 0; i < n; ++i) {
    s.chars.push_back(std::string(1, static_cast<char>('a' + rng.Below(26))));
  }
  for (int start = 0; start < n;) {
    const int len = std::min<int>(n - start, 1 + static_cast<int>(rng.Below(3)));
    s.words.push_back(Span{start, start + len});
    start += len;
  }
  for (int w = 0; w < s.num_words(); ++w) {
    s.pos.push_back(rng.Bernoulli(0.5) ? "NN" : "VV");
    const int head = w == 0 ? kRootHead : static_cast<int>(rng.Below(w));
    s.deps.push_back(Dependency{head, rng.Bernoulli(0.5) ? "nmod" : "dep"});
  }
  return s;
}

}  // namespace gcgts::testing

#endif  // GCGTS_TESTS_FIXTURES_H_
