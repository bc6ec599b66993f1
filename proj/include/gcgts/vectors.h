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

// Sidecar file of precomputed character vectors for the file-backed encoder.
//
//   GCVEC1\n
//   then per sentence:
//     <id>\n <n>\n <d_h>\n  followed by n*d_h little-endian f32 values
//
// Ids are the sentence "id" field, or the decimal corpus index when a
// sentence has none.

#ifndef GCGTS_VECTORS_H_
#define GCGTS_VECTORS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "gcgts/sentence.h"
#include "gcgts/tensor.h"

namespace gcgts {

struct SentenceVectors {
  std::string id;
  num::Tensor<float> vectors;  // [n, d_h]

  bool operator==(const SentenceVectors&) const = default;
};

void WriteVectors(std::ostream& out, const std::vector<SentenceVectors>& all);
void WriteVectorFile(const std::string& path,
                     const std::vector<SentenceVectors>& all);
// Throws IngestionError on a bad header, truncation or duplicate id.
std::vector<SentenceVectors> ReadVectors(std::istream& in);
std::vector<SentenceVectors> ReadVectorFile(const std::string& path);

// Key of a sentence in a sidecar: its id, else its corpus index.
std::string VectorKey(const Sentence& sentence, std::size_t index);

// Gives every sentence without an id its corpus index as id.
void AssignDefaultIds(std::vector<Sentence>& corpus);

class VectorTable {
 public:
  VectorTable() = default;
  explicit VectorTable(std::vector<SentenceVectors> all);

  // The [n, d_h] block for `id`. Missing ids and wrong shapes throw
  // IngestionError.
  const num::Tensor<float>& Lookup(const std::string& id, std::size_t n,
                                   std::size_t d_h) const;
  std::size_t size() const { return index_.size(); }

 private:
  std::vector<SentenceVectors> all_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace gcgts

#endif  // GCGTS_VECTORS_H_
