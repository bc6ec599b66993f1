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

#include "gcgts/corpus_io.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "gcgts/errors.h"

namespace gcgts {
namespace {

using nlohmann::json;

std::vector<Span> SpansFrom(const json& j, const char* field) {
  std::vector<Span> out;
  if (!j.contains(field)) return out;
  const json& arr = j.at(field);
  if (!arr.is_array()) {
    throw ValidationError(std::string("field '") + field + "' is not a list");
  }
  for (const json& s : arr) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() ||
        !s[1].is_number_integer()) {
      throw ValidationError(std::string("field '") + field +
                            "' holds a malformed span");
    }
    out.push_back(Span{s[0].get<int>(), s[1].get<int>()});
  }
  return out;
}

json SpansTo(const std::vector<Span>& spans) {
  json arr = json::array();
  for (const Span& s : spans) arr.push_back({s.start, s.end});
  return arr;
}

const json& Required(const json& j, const char* field) {
  if (!j.contains(field)) {
    throw ValidationError(std::string("missing field '") + field + "'");
  }
  return j.at(field);
}

}  // namespace

Sentence SentenceFromJson(const json& j) {
  if (!j.is_object()) throw ValidationError("sentence is not a JSON object");
  Sentence s;
  try {
    if (j.contains("id")) s.id = j.at("id").get<std::string>();
    s.chars = Required(j, "chars").get<std::vector<std::string>>();
    Required(j, "words");
    s.words = SpansFrom(j, "words");
    s.pos = Required(j, "pos").get<std::vector<std::string>>();
    for (const json& d : Required(j, "deps")) {
      s.deps.push_back(
          Dependency{d.at("head").get<int>(), d.at("rel").get<std::string>()});
    }
    s.aspects = SpansFrom(j, "aspects");
    s.opinions = SpansFrom(j, "opinions");
    if (j.contains("pairs")) {
      for (const json& p : j.at("pairs")) {
        if (!p.is_array() || p.size() != 2) {
          throw ValidationError("field 'pairs' holds a malformed pair");
        }
        s.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("wrong field type: ") + e.what());
  }
  Validate(s);
  return s;
}

json SentenceToJson(const Sentence& s) {
  json j;
  if (!s.id.empty()) j["id"] = s.id;
  j["chars"] = s.chars;
  j["words"] = SpansTo(s.words);
  j["pos"] = s.pos;
  json deps = json::array();
  for (const auto& d : s.deps) deps.push_back({{"head", d.head}, {"rel", d.rel}});
  j["deps"] = deps;
  j["aspects"] = SpansTo(s.aspects);
  j["opinions"] = SpansTo(s.opinions);
  json pairs = json::array();
  for (const auto& [a, o] : s.pairs) pairs.push_back({a, o});
  j["pairs"] = pairs;
  return j;
}

std::vector<Sentence> ParseCorpus(std::istream& in) {
  std::vector<Sentence> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    try {
      out.push_back(SentenceFromJson(j));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return out;
}

std::vector<Sentence> ReadCorpusFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open corpus " + path.string());
  return ParseCorpus(in);
}

void WriteCorpus(std::ostream& out, const std::vector<Sentence>& sentences) {
  for (const auto& s : sentences) out << SentenceToJson(s).dump() << '\n';
}

void WriteCorpusFile(const std::filesystem::path& path,
                     const std::vector<Sentence>& sentences) {
  std::ofstream out(path);
  if (!out) throw IngestionError("cannot write " + path.string());
  WriteCorpus(out, sentences);
  if (!out) throw IngestionError("write failed for " + path.string());
}

}  // namespace gcgts
