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

#include "gcgts/train.h"

#include <cmath>
#include <numeric>

#include "gcgts/adam.h"
#include "gcgts/errors.h"
#include "gcgts/ops.h"
#include "gcgts/rng.h"

namespace gcgts {

EvaluationResult Evaluate(GridModel<float>& model,
                          const std::vector<Sentence>& corpus) {
  EvaluationResult r;
  for (const Sentence& s : corpus) {
    r.predictions.push_back(model.Predict(s));
    r.metrics.Add(r.predictions.back(), GoldExtraction(s));
  }
  return r;
}

EvaluationResult EvaluateGoldOracle(const std::vector<Sentence>& corpus,
                                    TagMode mode) {
  EvaluationResult r;
  for (const Sentence& s : corpus) {
    r.predictions.push_back(DecodeGrid(EncodeGoldGrid(s, mode), s, mode));
    r.metrics.Add(r.predictions.back(), GoldExtraction(s));
  }
  return r;
}

nlohmann::json EpochLog::ToJson() const {
  nlohmann::json j = {{"epoch", epoch}, {"loss", loss}};
  if (dev) j["dev"] = dev->ToJson();
  return j;
}

std::vector<EpochLog> Train(GridModel<float>& model,
                            const std::vector<Sentence>& train,
                            const TrainOptions& options) {
  const ModelConfig& config = model.config();
  if (options.eval_every < 1) {
    throw ValidationError("train: eval_every must be at least 1");
  }
  num::Adam<float> adam(num::AdamOptions{.lr = config.lr});
  auto& store = model.params();
  Rng rng(options.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<LabelGrid> gold;
  gold.reserve(train.size());
  for (const Sentence& s : train) gold.push_back(EncodeGoldGrid(s, config.mode));

  std::vector<EpochLog> logs;
  double best_f1 = -1;
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    rng.Shuffle(order);
    double epoch_loss = 0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end =
          std::min(order.size(), start + std::size_t(config.batch_size));
      const float scale = 1.0f / static_cast<float>(end - start);
      store.ZeroGrad();
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t k = order[b];
        num::Tape<float> tape;
        const auto out = model.Forward(tape, train[k]);
        const auto loss = GridLoss(out.final_p(), gold[k]);
        const float value = loss.value().item();
        if (!std::isfinite(value)) {
          throw NumericError("non-finite loss at epoch " +
                             std::to_string(epoch) + " on sentence " +
                             std::to_string(k));
        }
        epoch_loss += value;
        tape.Backward(num::Scale(loss, scale));
      }
      for (const auto& p : store) {
        for (float g : p.grad.data()) {
          if (!std::isfinite(g)) {
            throw NumericError("non-finite gradient for " + p.name +
                               " at epoch " + std::to_string(epoch));
          }
        }
      }
      adam.Step(store);
    }
    EpochLog log;
    log.epoch = epoch;
    log.loss = train.empty() ? 0.0f
                             : static_cast<float>(epoch_loss / train.size());
    const bool last = epoch == options.epochs;
    if (options.dev && !(last || epoch % options.eval_every == 0)) {
      log.best = false;
    } else if (options.dev) {
      log.dev = Evaluate(model, *options.dev).metrics;
      log.best = log.dev->pair.f1() > best_f1;
      if (log.best) best_f1 = log.dev->pair.f1();
    } else {
      log.best = true;
    }
    if (options.on_epoch) options.on_epoch(log);
    logs.push_back(std::move(log));
  }
  return logs;
}

}  // namespace gcgts
