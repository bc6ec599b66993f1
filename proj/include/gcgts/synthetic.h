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

// Deterministic generator of annotated financial-commentary-like sentences.
//
// Each sentence is one or more clauses
//
//   [time] [modifier] aspect-noun [adverb] opinion [conj opinion] punct
//
// optionally preceded by a reporting clause ("公司 表示 ，"). Words are 1-3
// characters. Dependency trees are projective: inside a clause every word
// attaches to the clause's first opinion, later clauses attach to the first
// clause, and the first clause attaches to the reporting verb or is ROOT.
// Gold spans and pairs are recorded while the sentence is assembled.

#ifndef GCGTS_SYNTHETIC_H_
#define GCGTS_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "gcgts/sentence.h"

namespace gcgts {

struct SyntheticParams {
  int max_clauses = 2;
  double reporting_prob = 0.2;
  double time_prob = 0.25;
  double modifier_prob = 0.6;
  double adverb_prob = 0.35;
  double second_opinion_prob = 0.2;
};

std::vector<Sentence> GenerateSyntheticCorpus(std::uint64_t seed, int count,
                                              const SyntheticParams& params = {});

}  // namespace gcgts

#endif  // GCGTS_SYNTHETIC_H_
