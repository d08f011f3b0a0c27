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

#include <cstdlib>
#include <fstream>
#include <map>

#include <gtest/gtest.h>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/eval/report.h"
#include "simprobe/pipeline/config.h"
#include "simprobe/pipeline/run.h"
#include "simprobe/pipeline/stages.h"
#include "unit/test_util.h"

namespace simprobe::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using simprobe::testing::TempDir;
using simprobe::testing::TestData;

fs::path Fixture(const std::string &name) { return TestData("pipeline/" + name); }

ExperimentConfig BaseConfig(const TempDir &dir) {
  ExperimentConfig c;
  c.model_name = TestData("fixtures/tiny_bert").string();
  c.output_dir = dir.path();
  c.run_name = "run";
  c.seeds = {0, 1};
  c.batch_size = 4;
  c.epochs = 1;
  c.learning_rate = 1e-3;
  c.max_len = 32;
  c.sentiment_epochs = 3;
  c.data.corpus = Fixture("corpus.txt");
  c.data.knowledge = Fixture("knowledge.tsv");
  c.data.supervision = Fixture("supervision.txt");
  c.data.reviews = Fixture("reviews.csv");
  c.data.probe_sets["quizzes"] = Fixture("quizzes_sample.jsonl");
  c.ablations = {eval::Component::kVehicle};
  c.baselines = true;
  return c;
}

// Accepts every drafted distractor.
void WriteAcceptAll(const fs::path &drafts, const fs::path &out, int annotators) {
  std::vector<json> rows;
  for (const auto &d : ReadDrafts(drafts)) {
    for (const auto *list : {&d.selected, &d.reserve}) {
      for (const auto &c : *list) {
        for (int a = 0; a < annotators; ++a) {
          rows.push_back({{"record_id", d.record.id}, {"candidate", c.word}, {"annotator", a},
                          {"judgment", "y"}});
        }
      }
    }
  }
  WriteJsonl(out, rows);
}

std::map<std::string, std::string> Digests(const fs::path &dir) {
  std::map<std::string, std::string> out;
  for (const auto &e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().filename() != "manifest.json" &&
        e.path().filename() != "run.json" && e.path().filename() != "config.json") {
      out[fs::relative(e.path(), dir).string()] = Sha256File(e.path());
    }
  }
  return out;
}

TEST(ExperimentConfig, JsonRoundTripAndRelativePaths) {
  TempDir dir;
  ExperimentConfig c = BaseConfig(dir);
  EXPECT_EQ(ExperimentConfig::FromJson(c.ToJson()), c);
  c.selection_model = "roberta-large";
  EXPECT_EQ(ExperimentConfig::FromJson(c.ToJson()).selection_model, "roberta-large");
  WriteFileAtomic(dir / "cfg.json", R"({"model_name": "m", "data": {"corpus": "c.txt"}, "seeds": [4]})");
  ExperimentConfig loaded = ExperimentConfig::Load(dir / "cfg.json");
  EXPECT_EQ(*loaded.data.corpus, (dir / "c.txt").lexically_normal());
  EXPECT_EQ(loaded.seeds, std::vector<uint64_t>{4});
  EXPECT_EQ(ExperimentConfig().seeds, (std::vector<uint64_t>{0, 1, 2}));
}

TEST(ExperimentConfig, InvalidPathNamesTheKey) {
  TempDir dir;
  ExperimentConfig c = BaseConfig(dir);
  c.data.knowledge = dir / "missing.tsv";
  try {
    c.Validate();
    FAIL() << "expected a precondition error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
    EXPECT_NE(std::string(e.what()).find("data.knowledge"), std::string::npos);
  }
  c = BaseConfig(dir);
  c.seeds.clear();
  EXPECT_THROW(c.Validate(), Error);
}

TEST(PlannedStages, AutoPlanAndMissingInputs) {
  TempDir dir;
  ExperimentConfig c = BaseConfig(dir);
  auto planned = PlannedStages(c);
  // No judgments: confirmation and building are not planned.
  EXPECT_EQ(planned, (std::vector<Stage>{Stage::kMine, Stage::kDistractors, Stage::kFinetune,
                                         Stage::kEval, Stage::kAnalyze, Stage::kSentiment}));
  c.stages = {Stage::kSentiment, Stage::kMine};
  EXPECT_EQ(PlannedStages(c), (std::vector<Stage>{Stage::kMine, Stage::kSentiment}));
  c.data.reviews.reset();
  try {
    PlannedStages(c);
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("data.reviews"), std::string::npos);
  }
}

TEST(RunPipeline, FullRunThenCachedRerun) {
  TempDir dir;
  ExperimentConfig c = BaseConfig(dir);
  c.stages = {Stage::kMine, Stage::kDistractors};
  RunSummary first = RunPipeline(c);
  ASSERT_EQ(first.stages.size(), 2u);
  EXPECT_FALSE(first.stages[0].cached);

  WriteAcceptAll(first.run_dir / "distractors/drafts.jsonl", dir / "judgments.jsonl", c.annotators);
  c.data.judgments = dir / "judgments.jsonl";
  c.stages.clear();
  RunSummary full = RunPipeline(c);
  std::map<Stage, bool> cached;
  for (const auto &s : full.stages) cached[s.stage] = s.cached;
  ASSERT_EQ(cached.size(), 8u);
  EXPECT_TRUE(cached[Stage::kMine]);
  EXPECT_TRUE(cached[Stage::kDistractors]);
  EXPECT_FALSE(cached[Stage::kConfirm]);
  EXPECT_FALSE(cached[Stage::kEval]);

  const fs::path run = full.run_dir;
  const auto built = distractors::ReadProbeItems(run / "build/probe_items.jsonl");
  EXPECT_EQ(built.size(), 6u);
  for (const auto &item : built) EXPECT_TRUE(distractors::Validate(item).empty());
  for (uint64_t seed : c.seeds) {
    EXPECT_TRUE(fs::exists(run / ("finetune/seed-" + std::to_string(seed)) / "checkpoint" / "model.safetensors"));
  }
  EXPECT_TRUE(fs::exists(run / "eval/quizzes/zero_shot.json"));
  EXPECT_TRUE(fs::exists(run / "eval/built/ke_finetuned.json"));
  EXPECT_TRUE(fs::exists(run / "eval/quizzes/ablated-vehicle.json"));
  EXPECT_TRUE(fs::exists(run / "eval/quizzes/baseline-emb.json"));
  EXPECT_TRUE(fs::exists(run / "analyze/distances.csv"));
  EXPECT_TRUE(fs::exists(run / "sentiment/summary.csv"));
  const auto report = eval::ReportFromJson(json::parse(ReadFile(run / "eval/quizzes/zero_shot.json")));
  EXPECT_EQ(report.runs.size(), 2u);
  EXPECT_EQ(report.runs[0].predictions.size(), 6u);
  const json imports = json::parse(ReadFile(run / "eval/imports.json"));
  EXPECT_NE(imports["quizzes"]["warning"].get<std::string>().find("expected 858"), std::string::npos);

  const json info = json::parse(ReadFile(run / "run.json"));
  EXPECT_EQ(info["seeds"], json(c.seeds));
  EXPECT_EQ(info["version"], VersionString());
  EXPECT_EQ(ExperimentConfig::FromJson(info["config"]), c);

  const auto before = Digests(run);
  RunSummary again = RunPipeline(c);
  for (const auto &s : again.stages) EXPECT_TRUE(s.cached) << StageName(s.stage);
  EXPECT_EQ(Digests(run), before);

  // A training change invalidates training and everything downstream only.
  c.alpha = 3.0;
  RunSummary changed = RunPipeline(c);
  for (const auto &s : changed.stages) {
    const bool downstream = s.stage == Stage::kFinetune || s.stage == Stage::kEval ||
                            s.stage == Stage::kAnalyze || s.stage == Stage::kSentiment;
    EXPECT_EQ(s.cached, !downstream) << StageName(s.stage);
  }
}

TEST(RunPipeline, EvalOnlyOnReleasedData) {
  TempDir dir;
  ExperimentConfig c;
  c.model_name = TestData("fixtures/tiny_bert").string();
  c.output_dir = dir.path();
  c.data.probe_sets["quizzes"] = Fixture("quizzes_sample.jsonl");
  RunSummary s = RunPipeline(c);
  ASSERT_EQ(s.stages.size(), 2u);
  EXPECT_EQ(s.stages[0].stage, Stage::kEval);
  EXPECT_EQ(s.run_dir.filename().string().rfind("run-", 0), 0u);
  const std::string csv = ReadFile(s.run_dir / "eval/results.csv");
  EXPECT_EQ(csv.rfind(std::string(eval::kCsvHeader), 0), 0u);
  EXPECT_NE(ReadFile(s.run_dir / "analyze/categories.csv").find("qualities"), std::string::npos);
}

TEST(RunPipeline, StageFailureIsResumable) {
  TempDir dir;
  fs::create_directories(dir / "broken");
  WriteFileAtomic(dir / "broken/config.json", "{}");
  ExperimentConfig c;
  c.model_name = (dir / "broken").string();
  c.output_dir = dir.path();
  c.run_name = "r";
  c.data.corpus = Fixture("corpus.txt");
  c.data.probe_sets["quizzes"] = Fixture("quizzes_sample.jsonl");
  try {
    RunPipeline(c);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kStageFailure);
  }
  // Mining succeeded before the failure and is reused.
  c.model_name = TestData("fixtures/tiny_bert").string();
  RunSummary s = RunPipeline(c);
  EXPECT_EQ(s.stages[0].stage, Stage::kMine);
  EXPECT_TRUE(s.stages[0].cached);
}

TEST(ImportReleasedDataset, CountsAndTruncation) {
  TempDir dir;
  const std::string row =
      R"({"sentence": "The cat is as [MASK] as a snail .", "options": ["slow", "fast", "green", "blue"], "answer": "slow"})";
  std::string full;
  for (int i = 0; i < 775; ++i) full += row + "\n";
  WriteFileAtomic(dir / "general.jsonl", full);
  ImportResult ok = ImportReleasedDataset(dir / "general.jsonl", "General Corpus");
  EXPECT_EQ(ok.items.size(), 775u);
  EXPECT_EQ(ok.expected, 775);
  EXPECT_TRUE(ok.warning.empty());
  for (const auto &item : ok.items) {
    EXPECT_TRUE(distractors::Validate(item).empty());
    EXPECT_EQ(item.origins, std::vector<std::string>(3, "unknown"));
  }

  WriteFileAtomic(dir / "truncated.jsonl", full.substr(0, (row.size() + 1) * 400));
  ImportResult cut = ImportReleasedDataset(dir / "truncated.jsonl", "general_corpus");
  EXPECT_EQ(cut.items.size(), 400u);
  EXPECT_NE(cut.warning.find("expected 775"), std::string::npos);
  EXPECT_EQ(ExpectedItemCount("Quizzes"), 858);
  EXPECT_FALSE(ExpectedItemCount("other").has_value());
}

TEST(RecordFromItem, RestoresAnswer) {
  auto items = ImportReleasedDataset(Fixture("quizzes_sample.jsonl"), "quizzes").items;
  mining::SimileRecord r = RecordFromItem(items[0]);
  EXPECT_EQ(r.PropertyText(), "slow");
  EXPECT_EQ(r.VehicleText(), "snail");
  EXPECT_TRUE(mining::Validate(r).empty());
}

// ---- command line ------------------------------------------------------------

int Probe(const std::string &args) {
  const std::string cmd = std::string(SIMPROBE_PROBE_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ProbeCli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(Probe("--help"), 0);
  EXPECT_EQ(Probe("--version"), 0);
  EXPECT_EQ(Probe(""), 2);
  EXPECT_EQ(Probe("mine " + (dir / "missing.txt").string() + " -o x.jsonl"), 2);
  WriteFileAtomic(dir / "bad.json", R"({"data": {"corpus": "nope.txt"}})");
  EXPECT_EQ(Probe("run " + (dir / "bad.json").string()), 2);

  fs::create_directories(dir / "broken");
  WriteFileAtomic(dir / "broken/config.json", "{}");
  const json cfg{{"model_name", (dir / "broken").string()},
                 {"output_dir", dir.path().string()},
                 {"data", {{"probe_sets", {{"quizzes", Fixture("quizzes_sample.jsonl").string()}}}}}};
  WriteFileAtomic(dir / "broken.json", cfg.dump());
  EXPECT_EQ(Probe("run " + (dir / "broken.json").string()), 3);

  const std::string model = TestData("fixtures/tiny_bert").string();
  EXPECT_EQ(Probe("import " + Fixture("quizzes_sample.jsonl").string() + " -d quizzes -o " +
                  (dir / "q.jsonl").string()),
            0);
  EXPECT_EQ(Probe("eval -i " + (dir / "q.jsonl").string() + " -m " + model + " --seeds 0 -o " +
                  (dir / "r.json").string()),
            0);
  EXPECT_EQ(Probe("analyze categories " + (dir / "r.json").string() + " -o " +
                  (dir / "c.csv").string()),
            0);
  EXPECT_NE(ReadFile(dir / "c.csv").find("sense"), std::string::npos);
  EXPECT_EQ(Probe("analyze pca \"the cat is as fast as a dog\" -m " + model + " -o " +
                  (dir / "p.csv").string()),
            0);
  EXPECT_EQ(Probe("analyze distances -i " + (dir / "q.jsonl").string() + " -m " + model + " -o " +
                  (dir / "d.csv").string()),
            0);
}

}  // namespace
}  // namespace simprobe::pipeline
