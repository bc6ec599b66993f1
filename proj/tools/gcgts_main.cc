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

// Command-line front end: train, eval, predict, visualize, generate.
//
//   gcgts generate --seed 1 --count 20 --out train.jsonl
//   gcgts train --preset gcgts --train train.jsonl --epochs 300 --out run1
//   gcgts eval --checkpoint run1/best.ckpt --corpus train.jsonl
//   gcgts predict --checkpoint run1/best.ckpt --corpus raw.jsonl
//   gcgts visualize --checkpoint run1/best.ckpt --corpus raw.jsonl --index 0
//       --out grid.pgm
//
// Every subcommand exits 0 on success and 1 on any validation, ingestion or
// numeric failure, with the reason on stderr.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcgts/checkpoint.h"
#include "gcgts/corpus_io.h"
#include "gcgts/decode.h"
#include "gcgts/errors.h"
#include "gcgts/model.h"
#include "gcgts/pgm.h"
#include "gcgts/run_config.h"
#include "gcgts/synthetic.h"
#include "gcgts/train.h"
#include "gcgts/vectors.h"
#include "gcgts/vocab.h"

namespace gcgts {
namespace {

namespace fs = std::filesystem;

struct TrainArgs {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string train;
  std::string dev;
  std::optional<int> epochs;
  std::optional<int> eval_every;
  std::string vectors;
};

struct ModelArgs {
  std::string checkpoint;
  std::string corpus;
  std::string out;
  std::string vectors;
  bool allow_unknown_tags = false;
};

std::vector<Sentence> LoadCorpus(const std::string& path) {
  auto corpus = ReadCorpusFile(path);
  AssignDefaultIds(corpus);
  return corpus;
}

// Hooks up the sidecar vectors of a file-backed model; `override_path` wins
// over the path recorded in the config.
void AttachVectors(GridModel<float>& model, const std::string& override_path) {
  if (model.config().encoder != EncoderKind::kFileBacked) return;
  const std::string path =
      override_path.empty() ? model.config().vectors : override_path;
  model.SetVectors(std::make_shared<const VectorTable>(ReadVectorFile(path)));
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot write " + path);
  out << text;
  if (!out) throw IngestionError("write failed for " + path);
}

std::unique_ptr<GridModel<float>> LoadForCorpus(
    const ModelArgs& args, const std::vector<Sentence>& corpus) {
  auto model = LoadCheckpointFile(args.checkpoint);
  if (model->config().use_lagcn && !args.allow_unknown_tags) {
    const auto missing = MissingTags(model->vocabs(), corpus);
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw ValidationError(
          "vocab mismatch: corpus uses tags the checkpoint never saw (" + list +
          "); pass --allow-unknown-tags to map them to <unk>");
    }
  }
  AttachVectors(*model, args.vectors);
  return model;
}

int RunTrain(const TrainArgs& args) {
  RunConfig run;
  if (!args.config.empty()) run = RunConfig::FromFile(args.config);
  if (!args.preset.empty()) run.preset = args.preset;
  if (args.seed) run.seed = *args.seed;
  if (!args.out.empty()) run.out = args.out;
  if (!args.train.empty()) run.train = args.train;
  if (!args.dev.empty()) run.dev = args.dev;
  if (args.epochs) run.epochs = *args.epochs;
  if (args.eval_every) run.eval_every = *args.eval_every;
  if (!args.vectors.empty()) run.model.vectors = args.vectors;
  run.Validate();
  if (run.train.empty()) throw ValidationError("train: no training corpus");
  if (run.out.empty()) throw ValidationError("train: no output directory");

  // Both corpora are read and validated before anything is written.
  const auto train = LoadCorpus(run.train);
  std::optional<std::vector<Sentence>> dev;
  if (!run.dev.empty()) dev = LoadCorpus(run.dev);

  const ModelConfig config = run.ResolvedModel();
  GridModel<float> model(config, BuildVocabs(train), run.seed);
  AttachVectors(model, "");

  fs::create_directories(run.out);
  const fs::path dir(run.out);
  WriteText((dir / "run_config.json").string(), run.ToJson().dump(2) + "\n");
  std::ofstream log((dir / "train_log.jsonl").string());
  if (!log) throw IngestionError("cannot write training log in " + run.out);

  const std::string best = (dir / "best.ckpt").string();
  const std::string last = (dir / "last.ckpt").string();
  if (run.epochs == 0) SaveCheckpointFile(best, model);

  TrainOptions options;
  options.epochs = run.epochs;
  options.seed = run.seed;
  options.eval_every = run.eval_every;
  if (dev) options.dev = &*dev;
  options.on_epoch = [&](const EpochLog& e) {
    const std::string line = e.ToJson().dump();
    log << line << "\n" << std::flush;
    std::cout << line << "\n" << std::flush;
    if (e.best) SaveCheckpointFile(best, model);
  };
  Train(model, train, options);
  SaveCheckpointFile(last, model);
  return 0;
}

int RunEval(const ModelArgs& args, bool gold_oracle, const std::string& mode) {
  const auto corpus = LoadCorpus(args.corpus);
  EvaluationResult result;
  if (gold_oracle) {
    const TagMode tag_mode =
        args.checkpoint.empty() ? ParseTagMode(mode)
                                : LoadCheckpointFile(args.checkpoint)->config().mode;
    result = EvaluateGoldOracle(corpus, tag_mode);
  } else {
    if (args.checkpoint.empty()) {
      throw ValidationError("eval: --checkpoint is required without --gold-oracle");
    }
    auto model = LoadForCorpus(args, corpus);
    result = Evaluate(*model, corpus);
  }
  const std::string report = result.metrics.ToJson().dump(2) + "\n";
  std::cout << report;
  if (!args.out.empty()) WriteText(args.out, report);
  return 0;
}

int RunPredict(const ModelArgs& args) {
  const auto corpus = LoadCorpus(args.corpus);
  auto model = LoadForCorpus(args, corpus);
  std::string lines;
  for (const Sentence& s : corpus) {
    lines += ExtractionToJson(model->Predict(s), s).dump() + "\n";
  }
  if (args.out.empty()) {
    std::cout << lines;
  } else {
    WriteText(args.out, lines);
  }
  return 0;
}

int RunVisualize(const ModelArgs& args, int index) {
  if (args.out.empty()) throw ValidationError("visualize: --out is required");
  const auto corpus = LoadCorpus(args.corpus);
  if (index < 0 || index >= static_cast<int>(corpus.size())) {
    throw ValidationError("visualize: sentence index " + std::to_string(index) +
                          " outside a corpus of " +
                          std::to_string(corpus.size()));
  }
  auto model = LoadForCorpus(args, {corpus[index]});
  WriteText(args.out,
            RenderPgm(PairChannel(model->PredictProbs(corpus[index]))));
  return 0;
}

int RunGenerate(std::uint64_t seed, int count, const std::string& out) {
  if (count < 0) throw ValidationError("generate: count must be >= 0");
  WriteCorpusFile(out, GenerateSyntheticCorpus(seed, count));
  return 0;
}

void AddModelArgs(CLI::App* cmd, ModelArgs& args, bool need_checkpoint) {
  auto* ckpt = cmd->add_option("--checkpoint", args.checkpoint, "checkpoint file");
  if (need_checkpoint) ckpt->required();
  cmd->add_option("--corpus", args.corpus, "JSONL corpus")->required();
  cmd->add_option("--vectors", args.vectors,
                  "sidecar vector file for file-backed models");
  cmd->add_flag("--allow-unknown-tags", args.allow_unknown_tags,
                "map POS tags and relations unseen in training to <unk>");
}

int Main(int argc, char** argv) {
  CLI::App app{"Grid tagging for aspect-opinion pair extraction"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train a model");
  train_cmd->add_option("--config", train.config, "run config JSON file");
  train_cmd->add_option("--preset", train.preset, "ablation preset")
      ->check(CLI::IsMember(PresetNames()));
  train_cmd->add_option("--seed", train.seed, "initialization and shuffle seed");
  train_cmd->add_option("--out", train.out, "checkpoint and log directory");
  train_cmd->add_option("--train", train.train, "training corpus");
  train_cmd->add_option("--dev", train.dev, "dev corpus for model selection");
  train_cmd->add_option("--epochs", train.epochs, "number of epochs");
  train_cmd->add_option("--eval-every", train.eval_every, "dev evaluation period");
  train_cmd->add_option("--vectors", train.vectors,
                        "sidecar vector file for the file-backed encoder");

  ModelArgs eval;
  bool gold_oracle = false;
  std::string oracle_mode = "first-char";
  auto* eval_cmd = app.add_subcommand("eval", "score a model on a corpus");
  AddModelArgs(eval_cmd, eval, false);
  eval_cmd->add_option("--out", eval.out, "also write the report here");
  eval_cmd->add_flag("--gold-oracle", gold_oracle,
                     "decode gold grids instead of model output");
  eval_cmd->add_option("--mode", oracle_mode,
                       "tagging mode for --gold-oracle without a checkpoint");

  ModelArgs predict;
  auto* predict_cmd = app.add_subcommand("predict", "extract pairs as JSONL");
  AddModelArgs(predict_cmd, predict, true);
  predict_cmd->add_option("--out", predict.out, "output file (default stdout)");

  ModelArgs visualize;
  int index = 0;
  auto* visualize_cmd =
      app.add_subcommand("visualize", "write the pair probabilities as PGM");
  AddModelArgs(visualize_cmd, visualize, true);
  visualize_cmd->add_option("--index", index, "sentence index in the corpus");
  visualize_cmd->add_option("--out", visualize.out, "PGM file")->required();

  std::uint64_t gen_seed = 1;
  int count = 100;
  std::string gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "write a synthetic corpus");
  generate_cmd->add_option("--seed", gen_seed, "generator seed");
  generate_cmd->add_option("--count", count, "number of sentences");
  generate_cmd->add_option("--out", gen_out, "output JSONL file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*train_cmd) return RunTrain(train);
    if (*eval_cmd) return RunEval(eval, gold_oracle, oracle_mode);
    if (*predict_cmd) return RunPredict(predict);
    if (*visualize_cmd) return RunVisualize(visualize, index);
    if (*generate_cmd) return RunGenerate(gen_seed, count, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "gcgts: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace gcgts

int main(int argc, char** argv) { return gcgts::Main(argc, argv); }
