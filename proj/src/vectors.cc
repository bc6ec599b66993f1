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

#include "gcgts/vectors.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "gcgts/errors.h"

namespace gcgts {
namespace {

constexpr char kMagic[] = "GCVEC1";

std::string ReadLine(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw IngestionError(std::string("vectors: truncated before ") + what);
  }
  return line;
}

std::size_t ReadCount(std::istream& in, const char* what) {
  const std::string line = ReadLine(in, what);
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(line, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != line.size()) {
    throw IngestionError(std::string("vectors: bad ") + what + " \"" + line +
                         "\"");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

void WriteVectors(std::ostream& out, const std::vector<SentenceVectors>& all) {
  out << kMagic << '\n';
  for (const SentenceVectors& sv : all) {
    if (sv.vectors.rank() != 2) {
      throw DimensionError("vectors: block for \"" + sv.id + "\" has shape " +
                           num::ShapeString(sv.vectors.shape()));
    }
    out << sv.id << '\n'
        << sv.vectors.dim(0) << '\n'
        << sv.vectors.dim(1) << '\n';
    for (float f : sv.vectors.data()) {
      const auto bits = std::bit_cast<std::uint32_t>(f);
      const char bytes[4] = {static_cast<char>(bits & 0xFF),
                             static_cast<char>((bits >> 8) & 0xFF),
                             static_cast<char>((bits >> 16) & 0xFF),
                             static_cast<char>((bits >> 24) & 0xFF)};
      out.write(bytes, 4);
    }
  }
}

void WriteVectorFile(const std::string& path,
                     const std::vector<SentenceVectors>& all) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("vectors: cannot write " + path);
  WriteVectors(out, all);
  if (!out) throw IngestionError("vectors: write failed for " + path);
}

std::vector<SentenceVectors> ReadVectors(std::istream& in) {
  if (ReadLine(in, "header") != kMagic) {
    throw IngestionError("vectors: missing GCVEC1 header");
  }
  std::vector<SentenceVectors> out;
  while (in.peek() != std::char_traits<char>::eof()) {
    SentenceVectors sv;
    sv.id = ReadLine(in, "id");
    const std::size_t n = ReadCount(in, "row count");
    const std::size_t d = ReadCount(in, "width");
    std::vector<char> raw(n * d * 4);
    if (!in.read(raw.data(), static_cast<std::streamsize>(raw.size()))) {
      throw IngestionError("vectors: truncated block for \"" + sv.id + "\"");
    }
    std::vector<float> values(n * d);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto* b = reinterpret_cast<const unsigned char*>(&raw[4 * k]);
      const std::uint32_t bits = b[0] | (b[1] << 8) | (b[2] << 16) |
                                 (std::uint32_t(b[3]) << 24);
      values[k] = std::bit_cast<float>(bits);
    }
    sv.vectors = num::Tensor<float>(num::Shape{n, d}, std::move(values));
    out.push_back(std::move(sv));
  }
  return out;
}

std::vector<SentenceVectors> ReadVectorFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("vectors: cannot open " + path);
  return ReadVectors(in);
}

std::string VectorKey(const Sentence& sentence, std::size_t index) {
  return sentence.id.empty() ? std::to_string(index) : sentence.id;
}

void AssignDefaultIds(std::vector<Sentence>& corpus) {
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    corpus[i].id = VectorKey(corpus[i], i);
  }
}

VectorTable::VectorTable(std::vector<SentenceVectors> all)
    : all_(std::move(all)) {
  for (std::size_t i = 0; i < all_.size(); ++i) {
    if (!index_.emplace(all_[i].id, i).second) {
      throw IngestionError("vectors: duplicate id \"" + all_[i].id + "\"");
    }
  }
}

const num::Tensor<float>& VectorTable::Lookup(const std::string& id,
                                              std::size_t n,
                                              std::size_t d_h) const {
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw IngestionError("vectors: no vectors for sentence \"" + id + "\"");
  }
  const auto& t = all_[it->second].vectors;
  if (t.shape() != num::Shape{n, d_h}) {
    throw IngestionError("vectors: sentence \"" + id + "\" has block " +
                         num::ShapeString(t.shape()) + ", expected " +
                         num::ShapeString({n, d_h}));
  }
  return t;
}

}  // namespace gcgts
