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

// Mini-batch training with Adam, and corpus evaluation.

#ifndef GCGTS_TRAIN_H_
#define GCGTS_TRAIN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gcgts/decode.h"
#include "gcgts/model.h"
#include "json.hpp"

namespace gcgts {

struct EvaluationResult {
  Metrics metrics;
  std::vector<ExtractionResult> predictions;
};

// Decodes the model's final-round argmax for every sentence.
EvaluationResult Evaluate(GridModel<float>& model,
                          const std::vector<Sentence>& corpus);
// Decodes gold grids instead of model output: the upper bound of the decoder.
EvaluationResult EvaluateGoldOracle(const std::vector<Sentence>& corpus,
                                    TagMode mode);

struct EpochLog {
  int epoch = 0;                // 1-based
  float loss = 0;               // mean per-sentence loss over the epoch
  std::optional<Metrics> dev;   // when a dev corpus is given
  bool best = false;            // dev pair F1 improved (always true w/o dev)
                                // false on epochs that skip dev evaluation

  // {"epoch":..,"loss":..[,"dev":{metrics}]}
  nlohmann::json ToJson() const;
};

struct TrainOptions {
  int epochs = 10;
  std::uint64_t seed = 0;        // drives the epoch shuffles
  const std::vector<Sentence>* dev = nullptr;
  // Dev evaluation runs every `eval_every` epochs and after the last one.
  int eval_every = 1;
  // Called after every epoch, e.g. to log or save a checkpoint.
  std::function<void(const EpochLog&)> on_epoch;
};

// Trains in place. Each epoch visits `train` in a seeded shuffled order in
// batches of config().batch_size; the batch loss is the mean of the
// per-sentence grid losses. A non-finite loss throws NumericError.
std::vector<EpochLog> Train(GridModel<float>& model,
                            const std::vector<Sentence>& train,
                            const TrainOptions& options);

}  // namespace gcgts

#endif  // GCGTS_TRAIN_H_
