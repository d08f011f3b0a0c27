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

#include "simprobe/pipeline/config.h"

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"

namespace simprobe::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view ObjectiveName(Objective objective) {
  return objective == Objective::kMlm ? "mlm" : "ours";
}

Objective ParseObjective(std::string_view name) {
  if (name == "mlm") return Objective::kMlm;
  if (name == "ours" || name == "ke") return Objective::kOurs;
  Fail(ErrorCode::kInvalidArgument, "unknown objective \"" + std::string(name) + "\"");
}

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kMine: return "mine";
    case Stage::kDistractors: return "distractors";
    case Stage::kConfirm: return "confirm";
    case Stage::kBuild: return "build";
    case Stage::kFinetune: return "finetune";
    case Stage::kEval: return "eval";
    case Stage::kAnalyze: return "analyze";
    case Stage::kSentiment: return "sentiment";
  }
  return "?";
}

Stage ParseStage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (StageName(s) == name) return s;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown stage \"" + std::string(name) + "\"");
}

namespace {

void RequireExists(const std::optional<fs::path> &path, const std::string &key) {
  if (path && !fs::exists(*path)) {
    Fail(ErrorCode::kPrecondition, key + ": path does not exist: " + path->string());
  }
}

fs::path Resolve(const fs::path &base, const std::string &value) {
  fs::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::optional<fs::path> OptPath(const json &j, const char *key, const fs::path &base) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return Resolve(base, j.at(key).get<std::string>());
}

void PutPath(json &j, const char *key, const std::optional<fs::path> &path) {
  if (path) j[key] = path->string();
}

}  // namespace

void ExperimentConfig::Validate() const {
  Require(!model_name.empty(), ErrorCode::kPrecondition, "model_name: must not be empty");
  Require(!seeds.empty(), ErrorCode::kPrecondition, "seeds: must not be empty");
  Require(batch_size > 0, ErrorCode::kPrecondition, "batch_size: must be positive");
  Require(learning_rate > 0, ErrorCode::kPrecondition, "learning_rate: must be positive");
  Require(epochs > 0, ErrorCode::kPrecondition, "epochs: must be positive");
  Require(max_len > 2, ErrorCode::kPrecondition, "max_len: must exceed 2");
  Require(annotators > 0, ErrorCode::kPrecondition, "annotators: must be positive");
  Require(sentiment_epochs > 0, ErrorCode::kPrecondition, "sentiment_epochs: must be positive");
  if (objective == Objective::kOurs) {
    Require(alpha > 0, ErrorCode::kPrecondition, "alpha: must be positive for objective ours");
    Require(ke_variant != train::KeVariant::kNone, ErrorCode::kPrecondition,
            "ke_variant: objective ours needs a KE variant");
  }
  RequireExists(data.corpus, "data.corpus");
  RequireExists(data.lexicon, "data.lexicon");
  RequireExists(data.parses, "data.parses");
  RequireExists(data.synonyms, "data.synonyms");
  RequireExists(data.knowledge, "data.knowledge");
  RequireExists(data.conceptnet, "data.conceptnet");
  RequireExists(data.commonsense, "data.commonsense");
  RequireExists(data.cooccurrence, "data.cooccurrence");
  RequireExists(data.judgments, "data.judgments");
  RequireExists(data.supervision, "data.supervision");
  RequireExists(data.reviews, "data.reviews");
  RequireExists(data.embeddings, "data.embeddings");
  for (const auto &[name, path] : data.probe_sets) {
    RequireExists(path, "data.probe_sets." + name);
  }
}

train::TrainConfig ExperimentConfig::TrainConfigFor(uint64_t seed) const {
  train::TrainConfig c;
  c.alpha = objective == Objective::kMlm ? 0.0 : alpha;
  c.ke_variant = objective == Objective::kMlm ? train::KeVariant::kNone : ke_variant;
  c.batch_size = batch_size;
  c.learning_rate = learning_rate;
  c.epochs = epochs;
  c.max_len = max_len;
  c.seed = seed;
  return c;
}

std::string ExperimentConfig::ResolvedRunName() const {
  if (!run_name.empty()) return run_name;
  json j = ToJson();
  j.erase("run_name");
  j.erase("output_dir");
  return "run-" + Sha256Hex(j.dump()).substr(0, 12);
}

ExperimentConfig ExperimentConfig::FromJson(const json &j, const fs::path &base_dir) {
  ExperimentConfig c;
  try {
    c.model_name = j.value("model_name", c.model_name);
    c.selection_model = j.value("selection_model", c.selection_model);
    if (j.contains("objective")) c.objective = ParseObjective(j.at("objective").get<std::string>());
    if (j.contains("ke_variant")) c.ke_variant = train::ParseKeVariant(j.at("ke_variant").get<std::string>());
    c.alpha = j.value("alpha", c.alpha);
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
    c.batch_size = j.value("batch_size", c.batch_size);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.epochs = j.value("epochs", c.epochs);
    c.max_len = j.value("max_len", c.max_len);
    if (j.contains("output_dir")) c.output_dir = Resolve(base_dir, j.at("output_dir").get<std::string>());
    c.run_name = j.value("run_name", c.run_name);
    if (j.contains("stages")) {
      for (const auto &s : j.at("stages")) c.stages.push_back(ParseStage(s.get<std::string>()));
    }
    if (j.contains("ablations")) {
      for (const auto &s : j.at("ablations")) c.ablations.push_back(eval::ParseComponent(s.get<std::string>()));
    }
    c.baselines = j.value("baselines", c.baselines);
    c.build_seed = j.value("build_seed", c.build_seed);
    c.annotators = j.value("annotators", c.annotators);
    c.sentiment_epochs = j.value("sentiment_epochs", c.sentiment_epochs);
    if (j.contains("data")) {
      const json &d = j.at("data");
      c.data.corpus = OptPath(d, "corpus", base_dir);
      c.data.pretagged = d.value("pretagged", false);
      c.data.lexicon = OptPath(d, "lexicon", base_dir);
      c.data.parses = OptPath(d, "parses", base_dir);
      c.data.synonyms = OptPath(d, "synonyms", base_dir);
      c.data.knowledge = OptPath(d, "knowledge", base_dir);
      c.data.conceptnet = OptPath(d, "conceptnet", base_dir);
      c.data.commonsense = OptPath(d, "commonsense", base_dir);
      if (d.contains("commonsense_url")) c.data.commonsense_url = d.at("commonsense_url").get<std::string>();
      c.data.cooccurrence = OptPath(d, "cooccurrence", base_dir);
      c.data.judgments = OptPath(d, "judgments", base_dir);
      c.data.supervision = OptPath(d, "supervision", base_dir);
      c.data.reviews = OptPath(d, "reviews", base_dir);
      c.data.embeddings = OptPath(d, "embeddings", base_dir);
      if (d.contains("probe_sets")) {
        for (const auto &[name, value] : d.at("probe_sets").items()) {
          c.data.probe_sets[name] = Resolve(base_dir, value.get<std::string>());
        }
      }
    }
  } catch (const json::exception &e) {
    Fail(ErrorCode::kPrecondition, std::string("config: ") + e.what());
  }
  return c;
}

json ExperimentConfig::ToJson() const {
  json d = json::object();
  PutPath(d, "corpus", data.corpus);
  d["pretagged"] = data.pretagged;
  PutPath(d, "lexicon", data.lexicon);
  PutPath(d, "parses", data.parses);
  PutPath(d, "synonyms", data.synonyms);
  PutPath(d, "knowledge", data.knowledge);
  PutPath(d, "conceptnet", data.conceptnet);
  PutPath(d, "commonsense", data.commonsense);
  if (data.commonsense_url) d["commonsense_url"] = *data.commonsense_url;
  PutPath(d, "cooccurrence", data.cooccurrence);
  PutPath(d, "judgments", data.judgments);
  PutPath(d, "supervision", data.supervision);
  PutPath(d, "reviews", data.reviews);
  PutPath(d, "embeddings", data.embeddings);
  json sets = json::object();
  for (const auto &[name, path] : data.probe_sets) sets[name] = path.string();
  d["probe_sets"] = sets;

  json stage_names = json::array(), ablation_names = json::array();
  for (Stage s : stages) stage_names.push_back(StageName(s));
  for (eval::Component c : ablations) ablation_names.push_back(eval::ComponentName(c));
  return json{{"model_name", model_name},
              {"selection_model", selection_model},
              {"data", d},
              {"objective", ObjectiveName(objective)},
              {"ke_variant", train::KeVariantName(ke_variant)},
              {"alpha", alpha},
              {"seeds", seeds},
              {"batch_size", batch_size},
              {"learning_rate", learning_rate},
              {"epochs", epochs},
              {"max_len", max_len},
              {"output_dir", output_dir.string()},
              {"run_name", run_name},
              {"stages", stage_names},
              {"ablations", ablation_names},
              {"baselines", baselines},
              {"build_seed", build_seed},
              {"annotators", annotators},
              {"sentiment_epochs", sentiment_epochs}};
}

ExperimentConfig ExperimentConfig::Load(const fs::path &path) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::exception &e) {
    Fail(ErrorCode::kPrecondition, path.string() + ": " + e.what());
  }
  return FromJson(j, path.parent_path());
}

}  // namespace simprobe::pipeline
