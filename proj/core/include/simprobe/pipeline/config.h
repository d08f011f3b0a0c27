// Copyright 2026 The Simprobe Authors.
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

#ifndef SIMPROBE_PIPELINE_CONFIG_H_
#define SIMPROBE_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/eval/report.h"
#include "simprobe/train/ke.h"
#include "simprobe/train/objective.h"

namespace simprobe::pipeline {

enum class Objective { kMlm, kOurs };

std::string_view ObjectiveName(Objective objective);
Objective ParseObjective(std::string_view name);

// Pipeline stages in execution order.
enum class Stage { kMine, kDistractors, kConfirm, kBuild, kFinetune, kEval, kAnalyze, kSentiment };

inline constexpr Stage kAllStages[] = {Stage::kMine,     Stage::kDistractors, Stage::kConfirm,
                                       Stage::kBuild,    Stage::kFinetune,    Stage::kEval,
                                       Stage::kAnalyze,  Stage::kSentiment};

std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);

// Input files. Relative paths in a config file resolve against the file's
// directory.
struct DataPaths {
  std::optional<std::filesystem::path> corpus;  // one sentence per line
  bool pretagged = false;                       // corpus lines are word/TAG
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> parses;  // CoNLL-U
  std::optional<std::filesystem::path> synonyms;
  std::optional<std::filesystem::path> knowledge;  // relation<TAB>head<TAB>tail
  std::optional<std::filesystem::path> conceptnet;
  std::optional<std::filesystem::path> commonsense;  // word<TAB>property...
  std::optional<std::string> commonsense_url;
  std::optional<std::filesystem::path> cooccurrence;  // TSV or CoNLL-U
  std::optional<std::filesystem::path> judgments;     // recorded annotations
  std::optional<std::filesystem::path> supervision;   // sentences or records
  std::map<std::string, std::filesystem::path> probe_sets;
  std::optional<std::filesystem::path> reviews;
  std::optional<std::filesystem::path> embeddings;

  bool operator==(const DataPaths &) const = default;
};

struct ExperimentConfig {
  std::string model_name = "bert-base-uncased";
  // Encoder that ranks distractors; model_name when empty.
  std::string selection_model;
  DataPaths data;
  Objective objective = Objective::kOurs;
  train::KeVariant ke_variant = train::KeVariant::kTransE;
  double alpha = 5.0;
  std::vector<uint64_t> seeds = {0, 1, 2};
  int batch_size = 16;
  double learning_rate = 1e-5;
  int epochs = 10;
  int max_len = 128;
  std::filesystem::path output_dir = "runs";
  // Defaults to "run-" plus a digest of the config.
  std::string run_name;
  // Empty runs every stage whose inputs are configured.
  std::vector<Stage> stages;
  std::vector<eval::Component> ablations;
  bool baselines = false;
  uint64_t build_seed = 0;
  int annotators = 3;
  int sentiment_epochs = 200;

  // Raises kPrecondition naming the offending key.
  void Validate() const;
  train::TrainConfig TrainConfigFor(uint64_t seed) const;
  std::string ResolvedRunName() const;

  static ExperimentConfig FromJson(const nlohmann::json &j,
                                   const std::filesystem::path &base_dir = {});
  nlohmann::json ToJson() const;
  static ExperimentConfig Load(const std::filesystem::path &path);

  bool operator==(const ExperimentConfig &) const = default;
};

}  // namespace simprobe::pipeline

#endif  // SIMPROBE_PIPELINE_CONFIG_H_
