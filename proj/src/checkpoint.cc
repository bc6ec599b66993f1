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

#include "gcgts/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "gcgts/errors.h"

namespace gcgts {
namespace {

constexpr char kMagic[] = "GCGTS1\n";
constexpr std::size_t kMagicLen = sizeof(kMagic) - 1;

void PutU64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xFF);
  out.write(b, 8);
}

std::uint64_t GetU64(const unsigned char* b) {
  std::uint64_t v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | b[k];
  return v;
}

void PutF32(std::string& buf, float f) {
  const auto bits = std::bit_cast<std::uint32_t>(f);
  for (int k = 0; k < 4; ++k) buf.push_back(static_cast<char>((bits >> (8 * k)) & 0xFF));
}

float GetF32(const unsigned char* b) {
  return std::bit_cast<float>(static_cast<std::uint32_t>(
      b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t(b[3]) << 24)));
}

}  // namespace

void SaveCheckpoint(std::ostream& out, const GridModel<float>& model) {
  nlohmann::json tensors = nlohmann::json::array();
  std::string payload;
  for (const auto& p : model.params()) {
    const std::size_t offset = payload.size();
    for (float f : p.value.data()) PutF32(payload, f);
    tensors.push_back({{"name", p.name},
                       {"shape", p.value.shape()},
                       {"dtype", "f32"},
                       {"offset", offset},
                       {"nbytes", payload.size() - offset}});
  }
  const nlohmann::json manifest = {{"config", model.config().ToJson()},
                                   {"vocabs", model.vocabs().ToJson()},
                                   {"tensors", tensors}};
  const std::string text = manifest.dump();
  out.write(kMagic, kMagicLen);
  PutU64(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

void SaveCheckpointFile(const std::string& path, const GridModel<float>& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("checkpoint: cannot write " + path);
  SaveCheckpoint(out, model);
  if (!out) throw IngestionError("checkpoint: write failed for " + path);
}

std::unique_ptr<GridModel<float>> LoadCheckpoint(std::istream& in) {
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < kMagicLen + 8 ||
      bytes.compare(0, kMagicLen, kMagic) != 0) {
    throw IngestionError("checkpoint: missing GCGTS1 header");
  }
  const std::uint64_t len = GetU64(raw + kMagicLen);
  const std::size_t body = kMagicLen + 8;
  if (len > bytes.size() - body) {
    throw IngestionError("checkpoint: manifest runs past end of file");
  }
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(bytes.substr(body, len));
  } catch (const nlohmann::json::exception& e) {
    throw IngestionError(std::string("checkpoint: bad manifest: ") + e.what());
  }
  const std::size_t payload_start = body + len;
  const std::size_t payload_size = bytes.size() - payload_start;

  std::unique_ptr<GridModel<float>> model;
  try {
    model = std::make_unique<GridModel<float>>(
        ModelConfig::FromJson(manifest.at("config")),
        Vocabs::FromJson(manifest.at("vocabs")), 0);
  } catch (const nlohmann::json::exception& e) {
    throw IngestionError(std::string("checkpoint: bad manifest: ") + e.what());
  }
  const auto& tensors = manifest.at("tensors");
  if (tensors.size() != model->params().size()) {
    throw IngestionError("checkpoint: " + std::to_string(tensors.size()) +
                         " tensors, model expects " +
                         std::to_string(model->params().size()));
  }
  std::size_t expected_offset = 0;
  auto entry = tensors.begin();
  for (auto& p : model->params()) {
    const auto& t = *entry++;
    const std::string name = t.at("name").get<std::string>();
    const num::Shape shape = t.at("shape").get<num::Shape>();
    const std::size_t offset = t.at("offset").get<std::size_t>();
    const std::size_t nbytes = t.at("nbytes").get<std::size_t>();
    if (name != p.name || shape != p.value.shape()) {
      throw IngestionError("checkpoint: tensor " + name + " " +
                           num::ShapeString(shape) + " where the model has " +
                           p.name + " " + num::ShapeString(p.value.shape()));
    }
    if (t.at("dtype") != "f32" || offset != expected_offset ||
        nbytes != 4 * p.value.size() || offset + nbytes > payload_size) {
      throw IngestionError("checkpoint: bad directory entry for " + name);
    }
    const unsigned char* src = raw + payload_start + offset;
    for (std::size_t k = 0; k < p.value.size(); ++k) {
      p.value[k] = GetF32(src + 4 * k);
    }
    expected_offset += nbytes;
  }
  if (expected_offset != payload_size) {
    throw IngestionError("checkpoint: payload has trailing bytes");
  }
  return model;
}

std::unique_ptr<GridModel<float>> LoadCheckpointFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("checkpoint: cannot open " + path);
  return LoadCheckpoint(in);
}

}  // namespace gcgts
