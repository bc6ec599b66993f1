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

#include <vector>

#include "decode_oracle.h"
#include "doctest.h"
#include "fixtures.h"
#include "gcgts/decode.h"
#include "gcgts/errors.h"
#include "gcgts/synthetic.h"

namespace gcgts {
namespace {

using testing::OracleDecode;

// Fills the supervised cells of an n x n grid from the base-4 digits of
// `code`, in row-major order over supervised cells.
std::vector<Label> GridFromCode(const Sentence& s, TagMode mode, long code) {
  const int n = s.size();
  const auto mask = SupervisionMask(s, mode);
  std::vector<Label> labels(n * n, Label::kN);
  for (int c = 0; c < n * n; ++c) {
    if (!mask[c]) continue;
    labels[c] = static_cast<Label>(code % 4);
    code /= 4;
  }
  return labels;
}

TEST_CASE("decoding the gold grid recovers the annotations") {
  for (TagMode mode : {TagMode::kFirstChar, TagMode::kAllChar}) {
    const Sentence fig = testing::RawMaterialSentence();
    CHECK(DecodeGrid(EncodeGoldGrid(fig, mode), fig, mode) ==
          GoldExtraction(fig));
    for (const Sentence& s : GenerateSyntheticCorpus(11, 500)) {
      CHECK(DecodeGrid(EncodeGoldGrid(s, mode), s, mode) == GoldExtraction(s));
    }
  }
}

TEST_CASE("all-N grid decodes to nothing") {
  const Sentence s = testing::RawMaterialSentence();
  std::vector<Label> labels(64, Label::kN);
  CHECK(DecodeGrid(labels, s, TagMode::kAllChar).empty());
  CHECK(DecodeGrid(labels, s, TagMode::kFirstChar).empty());
}

TEST_CASE("wrong grid size is a dimension error") {
  const Sentence s = testing::RawMaterialSentence();
  std::vector<Label> labels(63, Label::kN);
  CHECK_THROWS_AS(DecodeGrid(labels, s, TagMode::kAllChar), DimensionError);
}

TEST_CASE("unsupervised cells are ignored") {
  const Sentence s = testing::RawMaterialSentence();
  std::vector<Label> labels(64, Label::kP);
  for (int p : {0, 3, 5, 7}) {
    for (int q : {0, 3, 5, 7}) labels[p * 8 + q] = Label::kN;
  }
  CHECK(DecodeGrid(labels, s, TagMode::kFirstChar).empty());
}

TEST_CASE("decoder matches the oracle on every labeling of six cells") {
  // Three single-char words in all-char mode, and three two-char words in
  // first-char mode: both have exactly six supervised cells.
  Sentence two_char;
  two_char.chars = {"a", "b", "c", "d", "e", "f"};
  two_char.words = {{0, 2}, {2, 4}, {4, 6}};
  two_char.pos = {"NN", "NN", "VV"};
  two_char.deps = {{1, "nmod"}, {kRootHead, "root"}, {1, "dep"}};
  Validate(two_char);
  const std::pair<Sentence, TagMode> cases[] = {
      {testing::CharWordSentence(3), TagMode::kAllChar},
      {two_char, TagMode::kFirstChar}};
  for (const auto& [s, mode] : cases) {
    REQUIRE(SupervisedPositions(s, mode).size() == 3);
    int mismatches = 0;
    for (long code = 0; code < 4096; ++code) {
      const auto labels = GridFromCode(s, mode, code);
      mismatches += DecodeGrid(labels, s, mode) != OracleDecode(labels, s, mode);
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("decoder matches the oracle on random grids") {
  Rng rng(2024);
  int mismatches = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(12));
    const Sentence s = testing::RandomSegmentedSentence(rng, n);
    const TagMode mode = rng.Bernoulli(0.5) ? TagMode::kAllChar
                                            : TagMode::kFirstChar;
    std::vector<Label> labels(n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        labels[i * n + j] = static_cast<Label>(rng.Below(4));
      }
    }
    mismatches += DecodeGrid(labels, s, mode) != OracleDecode(labels, s, mode);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("pair needs both runs and a P link in either orientation") {
  const Sentence s = testing::CharWordSentence(3);
  auto grid = [](Label d0, Label d1, Label d2, Label link) {
    std::vector<Label> g(9, Label::kN);
    g[0] = d0;
    g[4] = d1;
    g[8] = d2;
    g[0 * 3 + 2] = link;
    return g;
  };
  auto r = DecodeGrid(grid(Label::kA, Label::kN, Label::kO, Label::kP), s,
                      TagMode::kAllChar);
  CHECK(r.pairs.size() == 1);
  CHECK(r.pairs.begin()->first == Span{0, 1});
  r = DecodeGrid(grid(Label::kO, Label::kN, Label::kA, Label::kP), s,
                 TagMode::kAllChar);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs.begin()->first == Span{2, 3});
  CHECK(r.pairs.begin()->second == Span{0, 1});
  r = DecodeGrid(grid(Label::kA, Label::kN, Label::kA, Label::kP), s,
                 TagMode::kAllChar);
  CHECK(r.pairs.empty());
  CHECK(r.aspects.size() == 2);
}

TEST_CASE("scoring examples") {
  ExtractionResult gold, pred;
  const Span a1{0, 1}, a2{2, 3}, o1{4, 5}, o2{6, 7};
  gold.pairs = {{a1, o1}, {a2, o2}};
  pred.pairs = {{a1, o1}, {a2, o1}};
  const Metrics m = Score({pred}, {gold});
  CHECK(m.pair.precision() == doctest::Approx(0.5));
  CHECK(m.pair.recall() == doctest::Approx(0.5));
  CHECK(m.pair.f1() == doctest::Approx(0.5));

  const Metrics empty = Score({ExtractionResult{}}, {gold});
  CHECK(empty.pair.precision() == 0.0);
  CHECK(empty.pair.recall() == 0.0);
  CHECK(empty.pair.f1() == 0.0);

  const Metrics perfect = Score({gold}, {gold});
  CHECK(perfect.pair.f1() == 1.0);
  CHECK_THROWS_AS(Score({gold, gold}, {gold}), ContractError);

  const auto j = m.ToJson();
  CHECK(j["n_sentences"] == 1);
  CHECK(j["pair"]["f1"].get<double>() == doctest::Approx(0.5));
  CHECK(j.contains("aspect"));
  CHECK(j.contains("opinion"));
}

TEST_CASE("adding a correct prediction never lowers recall") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    ExtractionResult gold, pred;
    for (int k = 0; k < 6; ++k) {
      const int a = static_cast<int>(rng.Below(5)), o = 5 + static_cast<int>(rng.Below(5));
      const auto pair = std::make_pair(Span{a, a + 1}, Span{o, o + 1});
      gold.pairs.insert(pair);
      if (rng.Bernoulli(0.4)) pred.pairs.insert(pair);
      if (rng.Bernoulli(0.3)) pred.pairs.insert({Span{o, o + 1}, Span{a, a + 1}});
    }
    const Metrics before = Score({pred}, {gold});
    for (const auto& p : gold.pairs) pred.pairs.insert(p);
    const Metrics after = Score({pred}, {gold});
    CHECK(after.pair.recall() >= before.pair.recall());
    for (const Metrics* m : {&before, &after}) {
      for (double v : {m->pair.precision(), m->pair.recall(), m->pair.f1()}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("extraction JSON carries surface strings") {
  const Sentence s = testing::RawMaterialSentence();
  const auto j = ExtractionToJson(GoldExtraction(s), s);
  CHECK(j["text"] == "原材料价格上涨。");
  CHECK(j["aspects"][0]["text"] == "原材料价格");
  CHECK(j["pairs"][0]["opinion"]["text"] == "上涨");
  CHECK(j["pairs"][0]["aspect"]["span"] == nlohmann::json::array({0, 5}));
}

}  // namespace
}  // namespace gcgts
