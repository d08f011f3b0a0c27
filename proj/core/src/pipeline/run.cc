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

#include "simprobe/pipeline/run.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>

#include "simprobe/analysis/analysis.h"
#include "simprobe/common/csv.h"
#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"
#include "simprobe/eval/ablate.h"
#include "simprobe/eval/baselines.h"
#include "simprobe/eval/score.h"
#include "simprobe/mining/stats.h"
#include "simprobe/pipeline/stages.h"
#include "simprobe/sentiment/head.h"
#include "simprobe/train/finetune.h"

namespace simprobe::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string VersionString() { return std::string("simprobe ") + SIMPROBE_VERSION; }

// ---- manifest ----------------------------------------------------------------

Manifest::Manifest(fs::path run_dir) : run_dir_(std::move(run_dir)) {
  const fs::path path = run_dir_ / "manifest.json";
  data_ = json{{"stages", json::object()}};
  if (fs::exists(path)) {
    try {
      data_ = json::parse(ReadFile(path));
    } catch (const json::exception &) {
      data_ = json{{"stages", json::object()}};
    }
  }
}

std::optional<std::string> Manifest::Key(const std::string &stage) const {
  const json &stages = data_.at("stages");
  if (!stages.contains(stage)) return std::nullopt;
  return stages.at(stage).at("key").get<std::string>();
}

bool Manifest::Fresh(const std::string &stage, const std::string &key) const {
  const json &stages = data_.at("stages");
  if (!stages.contains(stage) || stages.at(stage).at("key") != key) return false;
  for (const auto &[rel, digest] : stages.at(stage).at("outputs").items()) {
    const fs::path path = run_dir_ / rel;
    if (!fs::is_regular_file(path) || Sha256File(path) != digest.get<std::string>()) return false;
  }
  return true;
}

void Manifest::Record(const std::string &stage, const std::string &key,
                      const std::vector<std::string> &outputs) {
  json digests = json::object();
  for (const auto &rel : outputs) digests[rel] = Sha256File(run_dir_ / rel);
  data_["stages"][stage] = json{{"key", key}, {"outputs", digests}};
  Save();
}

void Manifest::Save() const { WriteFileAtomic(run_dir_ / "manifest.json", data_.dump(2) + "\n"); }

// ---- planning ----------------------------------------------------------------

namespace {

bool Contains(const std::vector<Stage> &stages, Stage s) {
  return std::find(stages.begin(), stages.end(), s) != stages.end();
}

void RequireInput(bool present, Stage stage, const std::string &key) {
  if (!present) {
    Fail(ErrorCode::kPrecondition,
         "stage " + std::string(StageName(stage)) + " needs " + key + " in the config");
  }
}

bool HasCandidateSources(const DataPaths &d) {
  return d.knowledge || d.conceptnet || d.commonsense || d.commonsense_url || d.cooccurrence;
}

}  // namespace

std::vector<Stage> PlannedStages(const ExperimentConfig &config) {
  const DataPaths &d = config.data;
  std::vector<Stage> planned;
  if (config.stages.empty()) {
    if (d.corpus) planned.push_back(Stage::kMine);
    if (d.corpus && HasCandidateSources(d)) {
      planned.push_back(Stage::kDistractors);
      if (d.judgments) {
        planned.push_back(Stage::kConfirm);
        planned.push_back(Stage::kBuild);
      }
    }
    if (d.supervision) planned.push_back(Stage::kFinetune);
    if (!d.probe_sets.empty() || Contains(planned, Stage::kBuild)) {
      planned.push_back(Stage::kEval);
      planned.push_back(Stage::kAnalyze);
    }
    if (d.reviews) planned.push_back(Stage::kSentiment);
  } else {
    for (Stage s : kAllStages) {
      if (Contains(config.stages, s)) planned.push_back(s);
    }
  }
  for (Stage s : planned) {
    switch (s) {
      case Stage::kMine: RequireInput(d.corpus.has_value(), s, "data.corpus"); break;
      case Stage::kDistractors:
        RequireInput(HasCandidateSources(d), s,
                     "one of data.knowledge, data.conceptnet, data.commonsense, "
                     "data.commonsense_url or data.cooccurrence");
        break;
      case Stage::kFinetune: RequireInput(d.supervision.has_value(), s, "data.supervision"); break;
      case Stage::kSentiment: RequireInput(d.reviews.has_value(), s, "data.reviews"); break;
      case Stage::kEval:
      case Stage::kAnalyze:
        RequireInput(!d.probe_sets.empty() || Contains(planned, Stage::kBuild), s,
                     "data.probe_sets or the build stage");
        break;
      default: break;
    }
  }
  return planned;
}

// ---- runner ------------------------------------------------------------------

namespace {

std::string Slug(std::string text) {
  for (char &c : text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '-';
  }
  return text;
}

std::string Num(double value) {
  std::ostringstream out;
  out.precision(10);
  out << value;
  return out.str();
}

class Runner {
 public:
  Runner(const ExperimentConfig &config, const RunOptions &options)
      : config_(config),
        options_(options),
        run_dir_(config.output_dir / config.ResolvedRunName()),
        manifest_((fs::create_directories(run_dir_), run_dir_)) {}

  RunSummary Run() {
    const std::vector<Stage> planned = PlannedStages(config_);
    WriteRunInfo(planned);
    RunSummary summary;
    summary.run_dir = run_dir_;
    for (Stage s : planned) summary.stages.push_back(RunStage(s));
    return summary;
  }

 private:
  struct StageSpec {
    json params = json::object();
    std::vector<std::pair<std::string, fs::path>> inputs;
    std::vector<std::string> extra;  // further digests, e.g. models
    std::function<std::vector<std::string>()> body;
  };

  void Log(const std::string &line) const {
    if (options_.log) *options_.log << line << "\n" << std::flush;
  }

  void WriteRunInfo(const std::vector<Stage> &planned) const {
    json stages = json::array();
    for (Stage s : planned) stages.push_back(StageName(s));
    const json info{{"config", config_.ToJson()},
                    {"seeds", config_.seeds},
                    {"version", VersionString()},
                    {"stages", stages}};
    WriteFileAtomic(run_dir_ / "run.json", info.dump(2) + "\n");
    WriteFileAtomic(run_dir_ / "config.json", config_.ToJson().dump(2) + "\n");
  }

  std::string FileDigest(const fs::path &path) {
    const std::string key = fs::absolute(path).lexically_normal().string();
    auto it = digests_.find(key);
    if (it != digests_.end()) return it->second;
    std::string digest;
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto &entry : fs::recursive_directory_iterator(path)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      std::string all;
      for (const auto &f : files) all += fs::relative(f, path).string() + ":" + Sha256File(f) + "\n";
      digest = Sha256Hex(all);
    } else {
      digest = Sha256File(path);
    }
    digests_[key] = digest;
    return digest;
  }

  std::string ModelDigest() { return FileDigest(lm::ResolveCheckpoint(config_.model_name)); }

  std::string Key(Stage stage, const StageSpec &spec) {
    json inputs = json::object();
    for (const auto &[name, path] : spec.inputs) {
      Require(fs::exists(path), ErrorCode::kPrecondition,
              std::string(StageName(stage)) + ": missing input " + name + " (" + path.string() + ")");
      inputs[name] = FileDigest(path);
    }
    const json material{{"stage", StageName(stage)},
                        {"version", VersionString()},
                        {"params", spec.params},
                        {"inputs", inputs},
                        {"extra", spec.extra}};
    return Sha256Hex(material.dump());
  }

  StageOutcome RunStage(Stage stage) {
    StageSpec spec = Spec(stage);
    const std::string name(StageName(stage));
    const std::string key = Key(stage, spec);
    StageOutcome outcome{stage, false, {}};
    if (manifest_.Fresh(name, key)) {
      outcome.cached = true;
      for (const auto &[rel, digest] : manifest_.data().at("stages").at(name).at("outputs").items()) {
        outcome.outputs.push_back(rel);
      }
      Log("[" + name + "] cached");
      return outcome;
    }
    Log("[" + name + "] running");
    try {
      outcome.outputs = spec.body();
    } catch (const Error &e) {
      if (e.code() == ErrorCode::kPrecondition || e.code() == ErrorCode::kStageFailure) throw;
      Fail(ErrorCode::kStageFailure, name + ": " + e.what());
    } catch (const std::exception &e) {
      Fail(ErrorCode::kStageFailure, name + ": " + e.what());
    }
    std::sort(outcome.outputs.begin(), outcome.outputs.end());
    manifest_.Record(name, key, outcome.outputs);
    Log("[" + name + "] done, " + std::to_string(outcome.outputs.size()) + " outputs");
    return outcome;
  }

  std::string Write(const std::string &rel, std::string_view content) {
    WriteFileAtomic(run_dir_ / rel, content);
    return rel;
  }

  std::vector<std::string> FilesUnder(const std::string &rel_dir) const {
    std::vector<std::string> out;
    const fs::path dir = run_dir_ / rel_dir;
    if (!fs::exists(dir)) return out;
    for (const auto &entry : fs::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file()) out.push_back(fs::relative(entry.path(), run_dir_).string());
    }
    return out;
  }

  fs::path Out(const std::string &rel) const { return run_dir_ / rel; }

  const lm::TransformerMaskedLM &BaseModel() {
    if (!base_model_) base_model_ = LoadModel(config_.model_name, config_.max_len);
    return *base_model_;
  }

  bool Finetuned() const { return manifest_.Key("finetune").has_value() && PlannedOrDone(Stage::kFinetune); }

  bool PlannedOrDone(Stage s) const {
    return Contains(PlannedStages(config_), s) || manifest_.Key(std::string(StageName(s))).has_value();
  }

  std::string FinetunedName() const {
    return base_model_name() + "-" + std::string(ObjectiveName(config_.objective));
  }

  std::string base_model_name() const {
    fs::path p = fs::path(config_.model_name).lexically_normal();
    if (p.filename().empty()) p = p.parent_path();
    return p.filename().string();
  }

  fs::path CheckpointFor(uint64_t seed) const {
    return Out("finetune/seed-" + std::to_string(seed) + "/checkpoint");
  }

  // Loads one fine-tuned model at a time.
  eval::ModelForSeed FinetunedModels() {
    return [this](uint64_t seed) -> const lm::MaskedLanguageModel & {
      if (!tuned_model_ || tuned_seed_ != seed) {
        tuned_model_.reset();
        tuned_model_ = LoadModel(CheckpointFor(seed).string(), config_.max_len);
        tuned_model_->set_name(FinetunedName());
        tuned_seed_ = seed;
      }
      return *tuned_model_;
    };
  }

  std::unique_ptr<mining::PosTagger> MakeTagger() const {
    if (config_.data.pretagged) return std::make_unique<mining::PretaggedReader>();
    auto tagger = std::make_unique<mining::LexiconTagger>();
    if (config_.data.lexicon) tagger->LoadLexicon(*config_.data.lexicon);
    return tagger;
  }

  MineResult Mine(const fs::path &corpus, mining::PatternMode mode, const std::string &prefix) const {
    auto tagger = MakeTagger();
    // Component annotation re-tags tokens, so a lexicon tagger serves the
    // rule-based parser even for pretagged corpora.
    mining::LexiconTagger parse_tagger;
    if (config_.data.lexicon) parse_tagger.LoadLexicon(*config_.data.lexicon);
    mining::RuleBasedParser rules(parse_tagger);
    mining::ConlluParseBank bank;
    if (config_.data.parses) bank = mining::ConlluParseBank(*config_.data.parses);
    FallbackParser parser(bank, rules);
    std::optional<mining::SynonymTable> synonyms;
    if (config_.data.synonyms) synonyms.emplace(*config_.data.synonyms);
    mining::ExtractOptions options;
    options.mode = mode;
    options.id_prefix = prefix;
    return MineRecords(ReadLines(corpus), *tagger, parser, synonyms ? &*synonyms : nullptr, options);
  }

  void AddMiningInputs(StageSpec &spec) const {
    if (config_.data.lexicon) spec.inputs.emplace_back("lexicon", *config_.data.lexicon);
    if (config_.data.parses) spec.inputs.emplace_back("parses", *config_.data.parses);
    if (config_.data.synonyms) spec.inputs.emplace_back("synonyms", *config_.data.synonyms);
    spec.params["pretagged"] = config_.data.pretagged;
  }

  // Probe datasets for eval and analysis: imported sets plus the built one.
  std::vector<std::pair<std::string, fs::path>> ProbeSetInputs() const {
    std::vector<std::pair<std::string, fs::path>> out;
    for (const auto &[name, path] : config_.data.probe_sets) out.emplace_back("probe:" + name, path);
    if (PlannedOrDone(Stage::kBuild)) out.emplace_back("probe:built", Out("build/probe_items.jsonl"));
    return out;
  }

  std::map<std::string, std::vector<distractors::ProbeItem>> LoadProbeSets(json *imports) {
    std::map<std::string, std::vector<distractors::ProbeItem>> sets;
    for (const auto &[name, path] : config_.data.probe_sets) {
      ImportResult r = ImportReleasedDataset(path, name);
      if (!r.warning.empty()) Log("warning: " + r.warning);
      if (imports) {
        (*imports)[name] = json{{"path", path.string()},
                                {"items", r.items.size()},
                                {"expected", r.expected ? json(*r.expected) : json()},
                                {"warning", r.warning}};
      }
      sets[name] = std::move(r.items);
    }
    if (PlannedOrDone(Stage::kBuild)) {
      sets["built"] = distractors::ReadProbeItems(Out("build/probe_items.jsonl"));
    }
    return sets;
  }

  StageSpec Spec(Stage stage) {
    StageSpec spec;
    const DataPaths &d = config_.data;
    switch (stage) {
      case Stage::kMine: {
        spec.inputs.emplace_back("corpus", *d.corpus);
        AddMiningInputs(spec);
        spec.body = [this] {
          MineResult r = Mine(*config_.data.corpus, mining::PatternMode::kClosedSimile, "s");
          WriteRecords(Out("mine/records.jsonl"), r.records);
          json stats = mining::StatsToJson(mining::ComputeStats(r.records));
          stats["lines_read"] = r.lines_read;
          stats["lines_skipped"] = r.lines_skipped;
          stats["dropped_no_synonym"] = r.dropped_no_synonym;
          stats["dropped_invalid"] = r.dropped_invalid;
          stats["needs_review"] = r.needs_review;
          Write("mine/stats.json", stats.dump(2) + "\n");
          Log("mined " + std::to_string(r.records.size()) + " records");
          return std::vector<std::string>{"mine/records.jsonl", "mine/stats.json"};
        };
        break;
      }
      case Stage::kDistractors: {
        spec.inputs.emplace_back("records", Out("mine/records.jsonl"));
        if (d.knowledge) spec.inputs.emplace_back("knowledge", *d.knowledge);
        if (d.conceptnet) spec.inputs.emplace_back("conceptnet", *d.conceptnet);
        if (d.commonsense) spec.inputs.emplace_back("commonsense", *d.commonsense);
        if (d.cooccurrence) spec.inputs.emplace_back("cooccurrence", *d.cooccurrence);
        spec.params["commonsense_url"] = d.commonsense_url.value_or("");
        spec.extra.push_back(ModelDigest());
        if (!config_.selection_model.empty()) {
          spec.extra.push_back(FileDigest(lm::ResolveCheckpoint(config_.selection_model)));
        }
        spec.body = [this] {
          const DataPaths &d = config_.data;
          distractors::KnowledgeBase kb;
          if (d.knowledge) kb.LoadTsv(*d.knowledge);
          if (d.conceptnet) kb.LoadConceptNet(*d.conceptnet);
          distractors::GeneratedProperties generated;
          if (d.commonsense) generated = distractors::GeneratedProperties(*d.commonsense);
          std::optional<distractors::HttpCommonsense> http;
          if (d.commonsense_url) http.emplace(*d.commonsense_url);
          std::vector<const distractors::RelationLookup *> parts = {&generated};
          if (http) parts.push_back(&*http);
          distractors::CombinedLookup commonsense(parts);
          distractors::CooccurrenceIndex cooccurrence;
          if (d.cooccurrence) {
            if (ToLower(d.cooccurrence->extension().string()) == ".conllu") {
              cooccurrence.AddConlluFile(*d.cooccurrence);
            } else {
              cooccurrence.LoadTsv(*d.cooccurrence);
            }
          }
          std::unique_ptr<lm::TransformerMaskedLM> selection;
          if (!config_.selection_model.empty()) selection = LoadModel(config_.selection_model, config_.max_len);
          DraftResult r = DraftDistractors(ReadRecords(Out("mine/records.jsonl")), kb, commonsense,
                                           cooccurrence, BaseModel(), {}, 5, selection.get());
          WriteDrafts(Out("distractors/drafts.jsonl"), r.drafts);
          std::vector<json> dropped;
          for (const auto &x : r.dropped) dropped.push_back({{"record_id", x.record_id}, {"reason", x.reason}});
          WriteJsonl(Out("distractors/dropped.jsonl"), dropped);
          return std::vector<std::string>{"distractors/drafts.jsonl", "distractors/dropped.jsonl"};
        };
        break;
      }
      case Stage::kConfirm: {
        spec.inputs.emplace_back("drafts", Out("distractors/drafts.jsonl"));
        if (d.judgments && !options_.session) spec.inputs.emplace_back("judgments", *d.judgments);
        spec.params["annotators"] = config_.annotators;
        spec.params["interactive"] = options_.session != nullptr;
        spec.body = [this] {
          std::unique_ptr<RecordedSession> recorded;
          distractors::AnnotationSession *session = options_.session;
          if (!session) {
            RequireInput(config_.data.judgments.has_value(), Stage::kConfirm, "data.judgments");
            recorded = std::make_unique<RecordedSession>(*config_.data.judgments);
            session = recorded.get();
          }
          distractors::ConfirmOptions options;
          options.annotators = config_.annotators;
          options.threshold = config_.annotators / 2 + 1;
          options.transcript = Out("confirm/transcript.jsonl");
          fs::create_directories(Out("confirm"));
          std::error_code ec;
          fs::remove(*options.transcript, ec);
          auto result = distractors::ConfirmDistractors(ReadDrafts(Out("distractors/drafts.jsonl")),
                                                        *session, options);
          WriteDrafts(Out("confirm/confirmed.jsonl"), result.confirmed);
          std::vector<json> excluded;
          for (const auto &x : result.excluded) excluded.push_back({{"record_id", x.record_id}, {"reason", x.reason}});
          WriteJsonl(Out("confirm/excluded.jsonl"), excluded);
          if (!fs::exists(*options.transcript)) Write("confirm/transcript.jsonl", "");
          return std::vector<std::string>{"confirm/confirmed.jsonl", "confirm/excluded.jsonl",
                                          "confirm/transcript.jsonl"};
        };
        break;
      }
      case Stage::kBuild: {
        spec.inputs.emplace_back("confirmed", Out("confirm/confirmed.jsonl"));
        spec.params["build_seed"] = config_.build_seed;
        spec.body = [this] {
          auto items = BuildItems(ReadDrafts(Out("confirm/confirmed.jsonl")), config_.build_seed, "built");
          distractors::WriteProbeItems(Out("build/probe_items.jsonl"), items);
          return std::vector<std::string>{"build/probe_items.jsonl"};
        };
        break;
      }
      case Stage::kFinetune: {
        spec.inputs.emplace_back("supervision", *d.supervision);
        AddMiningInputs(spec);
        json train = config_.TrainConfigFor(0).ToJson();
        train.erase("seed");
        spec.params["train"] = train;
        spec.params["seeds"] = config_.seeds;
        spec.extra.push_back(ModelDigest());
        spec.body = [this] {
          const fs::path &src = *config_.data.supervision;
          std::vector<mining::SimileRecord> records;
          if (ToLower(src.extension().string()) == ".jsonl") {
            records = ReadRecords(src);
          } else {
            records = Mine(src, mining::PatternMode::kSupervision, "sup").records;
          }
          WriteRecords(Out("finetune/supervision.jsonl"), records);
          for (uint64_t seed : config_.seeds) {
            auto model = LoadModel(config_.model_name, config_.max_len);
            train::FinetuneOptions options;
            options.run_dir = Out("finetune/seed-" + std::to_string(seed));
            fs::remove_all(options.run_dir);
            auto result = train::Finetune(records, *model, config_.TrainConfigFor(seed), options);
            Log("seed " + std::to_string(seed) + ": " + std::to_string(result.steps.size()) +
                " steps, " + std::to_string(result.dropped_records) + " records dropped");
          }
          return FilesUnder("finetune");
        };
        break;
      }
      case Stage::kEval: {
        spec.inputs = ProbeSetInputs();
        if (d.embeddings && config_.baselines) spec.inputs.emplace_back("embeddings", *d.embeddings);
        spec.params["seeds"] = config_.seeds;
        std::vector<std::string> ablations;
        for (auto c : config_.ablations) ablations.emplace_back(eval::ComponentName(c));
        spec.params["ablations"] = ablations;
        spec.params["baselines"] = config_.baselines;
        spec.params["objective"] = ObjectiveName(config_.objective);
        spec.extra.push_back(ModelDigest());
        if (PlannedOrDone(Stage::kFinetune)) spec.extra.push_back("finetune:" + FinetuneKey());
        spec.body = [this] { return RunEval(); };
        break;
      }
      case Stage::kAnalyze: {
        spec.inputs = ProbeSetInputs();
        spec.inputs.emplace_back("results", Out("eval/results.csv"));
        spec.extra.push_back(ModelDigest());
        if (PlannedOrDone(Stage::kFinetune)) spec.extra.push_back("finetune:" + FinetuneKey());
        spec.params["seeds"] = config_.seeds;
        spec.body = [this] { return RunAnalyze(); };
        break;
      }
      case Stage::kSentiment: {
        spec.inputs.emplace_back("reviews", *d.reviews);
        spec.params["seeds"] = config_.seeds;
        spec.params["epochs"] = config_.sentiment_epochs;
        spec.extra.push_back(ModelDigest());
        if (PlannedOrDone(Stage::kFinetune)) spec.extra.push_back("finetune:" + FinetuneKey());
        spec.body = [this] { return RunSentiment(); };
        break;
      }
    }
    return spec;
  }

  std::string FinetuneKey() const { return manifest_.Key("finetune").value_or("pending"); }

  std::vector<std::string> RunEval() {
    fs::remove_all(Out("eval"));
    json imports = json::object();
    auto sets = LoadProbeSets(&imports);
    std::vector<std::string> outputs = {Write("eval/imports.json", imports.dump(2) + "\n")};
    std::vector<eval::ExperimentReport> all;
    auto save = [&](const std::string &dataset, const std::string &label,
                    const eval::ExperimentReport &report) {
      outputs.push_back(Write("eval/" + Slug(dataset) + "/" + Slug(label) + ".json",
                              eval::ReportToJson(report).dump(2) + "\n"));
      all.push_back(report);
      Log(dataset + " " + label + ": " + Num(report.mean_accuracy()));
    };
    std::optional<lm::EmbeddingTable> table;
    if (config_.baselines && config_.data.embeddings) table = lm::EmbeddingTable::Load(*config_.data.embeddings);
    for (const auto &[dataset, items] : sets) {
      if (items.empty()) continue;
      const auto &base = BaseModel();
      save(dataset, "zero_shot", eval::Evaluate(items, base, eval::Setting::kZeroShot, config_.seeds));
      if (Finetuned()) {
        const auto setting = config_.objective == Objective::kMlm ? eval::Setting::kMlmFinetuned
                                                                  : eval::Setting::kKeFinetuned;
        save(dataset, std::string(eval::SettingName(setting)),
             eval::Evaluate(items, FinetunedModels(), FinetunedName(), setting, config_.seeds));
      }
      for (auto component : config_.ablations) {
        auto r = eval::EvaluateAblation(items, component, base, config_.seeds);
        const std::string name(eval::ComponentName(component));
        save(dataset, "ablated-" + name, r.ablated);
        if (!r.kept.empty()) {
          save(dataset, "ablated-" + name + "-reference",
               eval::Evaluate(r.kept, base, eval::Setting::kZeroShot, config_.seeds));
        }
      }
      if (config_.baselines) {
        const auto vectors = eval::TableVectors(table ? &*table : nullptr, &base);
        save(dataset, "baseline-emb", eval::EvaluateBaseline(items, eval::Baseline::kEmb, vectors));
        save(dataset, "baseline-conscore",
             eval::EvaluateBaseline(items, eval::Baseline::kConScore, vectors));
      }
    }
    outputs.push_back(Write("eval/results.csv", eval::ReportsToCsv(all)));
    return outputs;
  }

  std::vector<std::string> RunAnalyze() {
    fs::remove_all(Out("analyze"));
    auto sets = LoadProbeSets(nullptr);
    std::string distances = "dataset," + std::string(analysis::kDistanceCsvHeader) + "\n";
    std::string categories = "dataset,report,seed," + std::string(analysis::kCategoryCsvHeader) + "\n";
    for (const auto &[dataset, items] : sets) {
      std::vector<mining::SimileRecord> records;
      for (const auto &item : items) records.push_back(RecordFromItem(item));
      auto add_distances = [&](const lm::MaskedLanguageModel &model, const std::string &name) {
        try {
          distances += CsvField(dataset) + "," +
                       analysis::DistanceCsvRow(name, analysis::ComponentDistances(records, model)) + "\n";
        } catch (const Error &e) {
          if (e.code() != ErrorCode::kPrecondition) throw;
          Log("distances skipped for " + dataset + ": " + e.what());
        }
      };
      add_distances(BaseModel(), base_model_name());
      if (Finetuned()) {
        auto models = FinetunedModels();
        for (uint64_t seed : config_.seeds) {
          add_distances(models(seed), FinetunedName() + "@" + std::to_string(seed));
        }
      }
      const fs::path dir = Out("eval/" + Slug(dataset));
      if (!fs::exists(dir)) continue;
      std::vector<fs::path> reports;
      for (const auto &entry : fs::directory_iterator(dir)) reports.push_back(entry.path());
      std::sort(reports.begin(), reports.end());
      for (const auto &path : reports) {
        const auto report = eval::ReportFromJson(json::parse(ReadFile(path)));
        for (const auto &run : report.runs) {
          const auto breakdown = analysis::BreakdownByCategory(run.predictions);
          const std::string csv = analysis::CategoryToCsv(breakdown);
          const auto rows = Split(csv, '\n');
          for (size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].empty()) continue;
            categories += CsvField(dataset) + "," + CsvField(path.stem().string()) + "," +
                          std::to_string(run.seed) + "," + rows[i] + "\n";
          }
        }
      }
    }
    return {Write("analyze/distances.csv", distances), Write("analyze/categories.csv", categories)};
  }

  std::vector<std::string> RunSentiment() {
    fs::remove_all(Out("sentiment"));
    const auto raw = sentiment::ReadReviews(*config_.data.reviews);
    std::vector<std::string> outputs;
    std::string summary = "encoder,seed,learning_rate,best_epoch,dev_accuracy,test_accuracy\n";
    for (uint64_t seed : config_.seeds) {
      const auto dataset = sentiment::PrepareReviews(raw, seed);
      sentiment::HeadConfig head;
      head.epochs = config_.sentiment_epochs;
      head.seed = seed;
      auto run = [&](const lm::MaskedLanguageModel &model, const std::string &name) {
        auto report = sentiment::RunSentimentProbe(dataset, model, head);
        report.encoder_name = name;
        outputs.push_back(Write("sentiment/" + Slug(name) + "-seed" + std::to_string(seed) + ".json",
                                sentiment::SentimentReportToJson(report).dump(2) + "\n"));
        summary += CsvRow({name, std::to_string(seed), Num(report.head.learning_rate),
                           std::to_string(report.head.best_epoch), Num(report.head.dev_accuracy),
                           Num(report.head.test_accuracy)}) +
                   "\n";
      };
      run(BaseModel(), base_model_name());
      if (Finetuned()) run(FinetunedModels()(seed), FinetunedName());
    }
    outputs.push_back(Write("sentiment/summary.csv", summary));
    return outputs;
  }

  const ExperimentConfig &config_;
  const RunOptions &options_;
  fs::path run_dir_;
  Manifest manifest_;
  std::map<std::string, std::string> digests_;
  std::unique_ptr<lm::TransformerMaskedLM> base_model_;
  std::unique_ptr<lm::TransformerMaskedLM> tuned_model_;
  uint64_t tuned_seed_ = 0;
};

}  // namespace

RunSummary RunPipeline(const ExperimentConfig &config, const RunOptions &options) {
  config.Validate();
  Runner runner(config, options);
  return runner.Run();
}

}  // namespace simprobe::pipeline
