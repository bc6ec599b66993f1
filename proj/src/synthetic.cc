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

#include "gcgts/synthetic.h"

#include <algorithm>
#include <string>
#include <string_view>

#include "gcgts/rng.h"

namespace gcgts {
namespace {

constexpr std::string_view kModifiers[] = {
    "原材料", "钢材", "铜", "公司", "行业", "汽车", "芯片", "电池", "煤炭", "产品"};
constexpr std::string_view kAspects[] = {
    "价格", "成本", "营收", "利润", "销量", "毛利率", "需求",
    "产能", "库存", "订单", "业绩", "出口", "费用", "股价"};
constexpr std::string_view kOpinions[] = {
    "上涨", "下降", "增长", "回落", "改善", "承压", "强劲", "疲软", "稳定", "提高",
    "减少", "好转", "下滑", "攀升", "涨", "跌", "大增", "萎缩", "低迷", "向好"};
constexpr std::string_view kAdverbs[] = {
    "持续", "明显", "继续", "有所", "进一步", "大幅", "略有", "显著"};
constexpr std::string_view kTimes[] = {
    "今年", "近期", "三季度", "上半年", "去年", "目前"};
constexpr std::string_view kConjs[] = {"且", "并", "而"};
constexpr std::string_view kSources[] = {"公司", "机构", "分析师", "券商", "管理层"};
constexpr std::string_view kReportVerbs[] = {"表示", "认为", "指出", "预计"};
constexpr std::string_view kModifierRels[] = {"nmod", "compound:nn", "assmod"};
constexpr std::string_view kSubjectRels[] = {"nsubj", "dep"};

template <typename T, std::size_t N>
std::string_view Pick(Rng& rng, const T (&arr)[N]) {
  return arr[rng.Below(N)];
}

// Splits a UTF-8 string into code points.
std::vector<std::string> Utf8Chars(std::string_view s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    out.emplace_back(s.substr(i, len));
    i += len;
  }
  return out;
}

class Builder {
 public:
  // Appends a word and returns its index. Head is filled in later.
  int AddWord(std::string_view text, std::string_view pos) {
    const int start = s_.size();
    for (auto& c : Utf8Chars(text)) s_.chars.push_back(std::move(c));
    s_.words.push_back(Span{start, s_.size()});
    s_.pos.emplace_back(pos);
    s_.deps.push_back(Dependency{kRootHead, "root"});
    return s_.num_words() - 1;
  }

  void Attach(int word, int head, std::string_view rel) {
    s_.deps[word] = Dependency{head, std::string(rel)};
  }

  Span WordsSpan(int first, int last) const {
    return Span{s_.words[first].start, s_.words[last].end};
  }

  int AddAspect(Span span) {
    s_.aspects.push_back(span);
    return static_cast<int>(s_.aspects.size()) - 1;
  }
  int AddOpinion(Span span) {
    s_.opinions.push_back(span);
    return static_cast<int>(s_.opinions.size()) - 1;
  }
  void AddPair(int a, int o) { s_.pairs.emplace_back(a, o); }

  Sentence Take() { return std::move(s_); }

 private:
  Sentence s_;
};

// Emits one clause; returns the word index of its head opinion.
int EmitClause(Builder& b, Rng& rng, const SyntheticParams& params,
               bool final_clause) {
  int time = -1, modifier = -1, adverb = -1;
  if (rng.Bernoulli(params.time_prob)) time = b.AddWord(Pick(rng, kTimes), "NT");
  if (rng.Bernoulli(params.modifier_prob)) {
    modifier = b.AddWord(Pick(rng, kModifiers), "NN");
  }
  const int noun = b.AddWord(Pick(rng, kAspects), "NN");
  if (rng.Bernoulli(params.adverb_prob)) {
    adverb = b.AddWord(Pick(rng, kAdverbs), "AD");
  }
  const int opinion = b.AddWord(Pick(rng, kOpinions), "VV");
  int conj = -1, second = -1;
  if (rng.Bernoulli(params.second_opinion_prob)) {
    conj = b.AddWord(Pick(rng, kConjs), "CC");
    second = b.AddWord(Pick(rng, kOpinions), "VV");
  }
  const int punct = b.AddWord(final_clause ? "。" : "，", "PU");

  if (time >= 0) b.Attach(time, opinion, "tmod");
  if (modifier >= 0) b.Attach(modifier, noun, Pick(rng, kModifierRels));
  b.Attach(noun, opinion, Pick(rng, kSubjectRels));
  if (adverb >= 0) b.Attach(adverb, opinion, "advmod");
  if (second >= 0) {
    b.Attach(conj, second, "cc");
    b.Attach(second, opinion, "conj");
  }
  b.Attach(punct, opinion, "punct");

  const int aspect =
      b.AddAspect(b.WordsSpan(modifier >= 0 ? modifier : noun, noun));
  const int op = b.AddOpinion(b.WordsSpan(opinion, opinion));
  b.AddPair(aspect, op);
  if (second >= 0) b.AddPair(aspect, b.AddOpinion(b.WordsSpan(second, second)));
  return opinion;
}

}  // namespace

std::vector<Sentence> GenerateSyntheticCorpus(std::uint64_t seed, int count,
                                              const SyntheticParams& params) {
  std::vector<Sentence> out;
  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    Builder b;
    int verb = -1, source = -1, comma = -1;
    if (rng.Bernoulli(params.reporting_prob)) {
      source = b.AddWord(Pick(rng, kSources), "NN");
      verb = b.AddWord(Pick(rng, kReportVerbs), "VV");
      comma = b.AddWord("，", "PU");
    }
    const int clauses =
        1 + static_cast<int>(rng.Below(std::max(params.max_clauses, 1)));
    int first_root = -1;
    for (int c = 0; c < clauses; ++c) {
      const int root = EmitClause(b, rng, params, c + 1 == clauses);
      if (first_root < 0) {
        first_root = root;
      } else {
        b.Attach(root, first_root, "conj");
      }
    }
    if (verb >= 0) {
      b.Attach(source, verb, "nsubj");
      b.Attach(comma, verb, "punct");
      b.Attach(first_root, verb, "ccomp");
    }
    out.push_back(b.Take());
  }
  return out;
}

}  // namespace gcgts
