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

// JSON Lines corpus format. One object per line:
//
//   {"chars":["原","材",...], "words":[[0,3],[3,5],...], "pos":["NN",...],
//    "deps":[{"head":1,"rel":"nmod"},...,{"head":-1,"rel":"root"}],
//    "aspects":[[0,5]], "opinions":[[5,7]], "pairs":[[0,0]]}
//
// head -1 is ROOT. An optional "id" string keys external vector files.
// "aspects", "opinions" and "pairs" may be omitted for unannotated input.

#ifndef GCGTS_CORPUS_IO_H_
#define GCGTS_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcgts/sentence.h"
#include "json.hpp"

namespace gcgts {

// Parses and validates one JSON object. Throws ValidationError.
Sentence SentenceFromJson(const nlohmann::json& j);
nlohmann::json SentenceToJson(const Sentence& s);

// Reads a JSONL stream. Blank lines are skipped. Malformed JSON throws
// ParseError with the 1-based line number; invariant violations throw
// ValidationError prefixed with the line number.
std::vector<Sentence> ParseCorpus(std::istream& in);
std::vector<Sentence> ReadCorpusFile(const std::filesystem::path& path);

void WriteCorpus(std::ostream& out, const std::vector<Sentence>& sentences);
void WriteCorpusFile(const std::filesystem::path& path,
                     const std::vector<Sentence>& sentences);

}  // namespace gcgts

#endif  // GCGTS_CORPUS_IO_H_
