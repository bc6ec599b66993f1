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

// Single-file checkpoints.
//
//   "GCGTS1\n"
//   manifest length, 8 bytes little-endian
//   manifest JSON: {"config":{...},"vocabs":{...},
//                   "tensors":[{"name","shape","dtype":"f32","offset","nbytes"}]}
//   payload: every tensor's values as little-endian f32, in manifest order
//
// Tensors are written in parameter registration order with contiguous
// offsets, so loading and saving again reproduces the file byte for byte.

#ifndef GCGTS_CHECKPOINT_H_
#define GCGTS_CHECKPOINT_H_

#include <istream>
#include <memory>
#include <ostream>
#include <string>

#include "gcgts/model.h"

namespace gcgts {

void SaveCheckpoint(std::ostream& out, const GridModel<float>& model);
void SaveCheckpointFile(const std::string& path, const GridModel<float>& model);

// Rebuilds the model from the stored config and vocabularies, then fills in
// every parameter. Malformed files and name/shape mismatches throw
// IngestionError.
std::unique_ptr<GridModel<float>> LoadCheckpoint(std::istream& in);
std::unique_ptr<GridModel<float>> LoadCheckpointFile(const std::string& path);

}  // namespace gcgts

#endif  // GCGTS_CHECKPOINT_H_
