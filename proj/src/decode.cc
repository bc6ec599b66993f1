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

#include "gcgts/decode.h"

#include <algorithm>

#include "gcgts/errors.h"

namespace gcgts {
namespace {

template <typename T>
long Overlap(const std::set<T>& a, const std::set<T>& b) {
  long n = 0;
  for (const auto& x : a) n += b.count(x);
  return n;
}

void Accumulate(Prf& prf, long tp, std::size_t predicted, std::size_t gold) {
  prf.tp += tp;
  prf.predicted += static_cast<long>(predicted);
  prf.gold += static_cast<long>(gold);
}

nlohmann::json PrfJson(const Prf& p) {
  return {{"p", p.precision()}, {"r", p.recall()}, {"f1", p.f1()}};
}

}  // namespace

ExtractionResult GoldExtraction(const Sentence& s) {
  ExtractionResult r;
  r.aspects.insert(s.aspects.begin(), s.aspects.end());
  r.opinions.insert(s.opinions.begin(), s.opinions.end());
  for (const auto& [a, o] : s.pairs) r.pairs.emplace(s.aspects[a], s.opinions[o]);
  return r;
}

ExtractionResult DecodeGrid(std::span<const Label> labels, const Sentence& s,
                            TagMode mode) {
  const int n = s.size();
  if (labels.size() != static_cast<std::size_t>(n) * n) {
    throw DimensionError("decode: " + std::to_string(labels.size()) +
                         " labels for a sentence of " + std::to_string(n) +
                         " characters");
  }
  const std::vector<int> pos = SupervisedPositions(s, mode);
  const int m = static_cast<int>(pos.size());
  auto label = [&](int a, int b) {  // a <= b, indices into pos
    return labels[pos[a] * n + pos[b]];
  };

  // run_of[k] = index into `spans` of the run containing position k, or -1.
  std::vector<Span> spans;
  std::vector<int> run_of(m, -1);
  for (int k = 0; k < m;) {
    const Label l = label(k, k);
    if (l != Label::kA && l != Label::kO) {
      ++k;
      continue;
    }
    int end = k;
    while (end + 1 < m && label(end + 1, end + 1) == l) ++end;
    const Span span{s.words[s.WordOf(pos[k])].start,
                    s.words[s.WordOf(pos[end])].end};
    for (int q = k; q <= end; ++q) run_of[q] = static_cast<int>(spans.size());
    spans.push_back(span);
    k = end + 1;
  }

  ExtractionResult r;
  for (int k = 0; k < m; ++k) {
    if (run_of[k] < 0) continue;
    (label(k, k) == Label::kA ? r.aspects : r.opinions).insert(spans[run_of[k]]);
  }
  for (int a = 0; a < m; ++a) {
    if (run_of[a] < 0) continue;
    for (int b = a + 1; b < m; ++b) {
      if (run_of[b] < 0 || label(a, b) != Label::kP) continue;
      const Label la = label(a, a), lb = label(b, b);
      if (la == Label::kA && lb == Label::kO) {
        r.pairs.emplace(spans[run_of[a]], spans[run_of[b]]);
      } else if (la == Label::kO && lb == Label::kA) {
        r.pairs.emplace(spans[run_of[b]], spans[run_of[a]]);
      }
    }
  }
  return r;
}

nlohmann::json ExtractionToJson(const ExtractionResult& r, const Sentence& s) {
  auto span_json = [&](Span sp) {
    return nlohmann::json{{"span", {sp.start, sp.end}}, {"text", s.Text(sp)}};
  };
  nlohmann::json j;
  if (!s.id.empty()) j["id"] = s.id;
  j["text"] = s.Text();
  j["aspects"] = nlohmann::json::array();
  j["opinions"] = nlohmann::json::array();
  j["pairs"] = nlohmann::json::array();
  for (Span a : r.aspects) j["aspects"].push_back(span_json(a));
  for (Span o : r.opinions) j["opinions"].push_back(span_json(o));
  for (const auto& [a, o] : r.pairs) {
    j["pairs"].push_back({{"aspect", span_json(a)}, {"opinion", span_json(o)}});
  }
  return j;
}

void Metrics::Add(const ExtractionResult& predicted,
                  const ExtractionResult& gold) {
  ++n_sentences;
  Accumulate(pair, Overlap(predicted.pairs, gold.pairs), predicted.pairs.size(),
             gold.pairs.size());
  Accumulate(aspect, Overlap(predicted.aspects, gold.aspects),
             predicted.aspects.size(), gold.aspects.size());
  Accumulate(opinion, Overlap(predicted.opinions, gold.opinions),
             predicted.opinions.size(), gold.opinions.size());
}

nlohmann::json Metrics::ToJson() const {
  return {{"pair", PrfJson(pair)},
          {"aspect", PrfJson(aspect)},
          {"opinion", PrfJson(opinion)},
          {"n_sentences", n_sentences}};
}

Metrics Score(const std::vector<ExtractionResult>& predicted,
              const std::vector<ExtractionResult>& gold) {
  if (predicted.size() != gold.size()) {
    throw ContractError("score: " + std::to_string(predicted.size()) +
                        " predictions for " + std::to_string(gold.size()) +
                        " gold sentences");
  }
  Metrics m;
  for (std::size_t i = 0; i < gold.size(); ++i) m.Add(predicted[i], gold[i]);
  return m;
}

}  // namespace gcgts
