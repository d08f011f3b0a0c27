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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simprobe/analysis/analysis.h"
#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"
#include "simprobe/distractors/confirm.h"
#include "simprobe/distractors/cooccurrence.h"
#include "simprobe/distractors/knowledge.h"
#include "simprobe/eval/ablate.h"
#include "simprobe/eval/baselines.h"
#include "simprobe/eval/quiz.h"
#include "simprobe/eval/score.h"
#include "simprobe/mining/stats.h"
#include "simprobe/pipeline/config.h"
#include "simprobe/pipeline/run.h"
#include "simprobe/pipeline/stages.h"
#include "simprobe/sentiment/head.h"
#include "simprobe/train/finetune.h"

namespace {

namespace fs = std::filesystem;
using namespace simprobe;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitStageFailure = 3;

// Writes to `path`, or stdout when empty.
void Emit(const std::string &path, const std::string &content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    WriteFileAtomic(path, content);
  }
}

std::vector<distractors::ProbeItem> LoadItems(const std::string &path, const std::string &released) {
  if (released.empty()) return distractors::ReadProbeItems(path);
  auto result = pipeline::ImportReleasedDataset(path, released);
  if (!result.warning.empty()) std::cerr << "warning: " << result.warning << "\n";
  return result.items;
}

std::unique_ptr<lm::TransformerMaskedLM> Model(const std::string &name, int max_len) {
  return pipeline::LoadModel(name, max_len);
}

struct CommonModel {
  std::string model = "bert-base-uncased";
  int max_len = lm::kDefaultMaxLength;

  void Add(CLI::App *cmd) {
    cmd->add_option("-m,--model", model, "Checkpoint directory or name under $SIMPROBE_MODEL_CACHE")
        ->capture_default_str();
    cmd->add_option("--max-len", max_len, "Maximum input length in subtokens")->capture_default_str();
  }
};

struct ItemsArgs {
  std::string items;
  std::string released;

  void Add(CLI::App *cmd) {
    cmd->add_option("-i,--items", items, "Probe items (JSONL), or a published file with --released")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--released", released,
                    "Read --items as a published dataset with this name (general_corpus, quizzes)");
  }
  std::vector<distractors::ProbeItem> Load() const { return LoadItems(items, released); }
};

// ---- mine --------------------------------------------------------------------

void AddMine(CLI::App &app) {
  struct Args {
    std::string corpus, lexicon, parses, synonyms, out, stats, mode = "closed", prefix = "s";
    bool pretagged = false;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("mine", "Extract annotated similes from a corpus");
  cmd->add_option("corpus", args->corpus, "One sentence per line")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--pretagged", args->pretagged, "Lines are space separated word/TAG pairs");
  cmd->add_option("--lexicon", args->lexicon, "Tagger lexicon")->check(CLI::ExistingFile);
  cmd->add_option("--parses", args->parses, "CoNLL-U parses")->check(CLI::ExistingFile);
  cmd->add_option("--synonyms", args->synonyms, "Synonym table")->check(CLI::ExistingFile);
  cmd->add_option("--mode", args->mode, "closed or supervision")
      ->check(CLI::IsMember({"closed", "supervision"}))
      ->capture_default_str();
  cmd->add_option("--id-prefix", args->prefix)->capture_default_str();
  cmd->add_option("-o,--out", args->out, "Records JSONL")->required();
  cmd->add_option("--stats", args->stats, "Dataset statistics JSON");
  cmd->callback([args] {
    std::unique_ptr<mining::PosTagger> tagger;
    mining::LexiconTagger lexicon;
    if (!args->lexicon.empty()) lexicon.LoadLexicon(args->lexicon);
    if (args->pretagged) {
      tagger = std::make_unique<mining::PretaggedReader>();
    } else {
      tagger = std::make_unique<mining::LexiconTagger>(lexicon);
    }
    mining::RuleBasedParser rules(lexicon);
    mining::ConlluParseBank bank;
    if (!args->parses.empty()) bank = mining::ConlluParseBank(args->parses);
    pipeline::FallbackParser parser(bank, rules);
    std::optional<mining::SynonymTable> synonyms;
    if (!args->synonyms.empty()) synonyms.emplace(args->synonyms);
    mining::ExtractOptions options;
    options.mode = args->mode == "closed" ? mining::PatternMode::kClosedSimile
                                          : mining::PatternMode::kSupervision;
    options.id_prefix = args->prefix;
    auto r = pipeline::MineRecords(ReadLines(args->corpus), *tagger, parser,
                                   synonyms ? &*synonyms : nullptr, options);
    pipeline::WriteRecords(args->out, r.records);
    json stats = mining::StatsToJson(mining::ComputeStats(r.records));
    stats["lines_read"] = r.lines_read;
    stats["lines_skipped"] = r.lines_skipped;
    stats["dropped_no_synonym"] = r.dropped_no_synonym;
    stats["dropped_invalid"] = r.dropped_invalid;
    stats["needs_review"] = r.needs_review;
    if (!args->stats.empty()) WriteFileAtomic(args->stats, stats.dump(2) + "\n");
    std::cerr << r.records.size() << " records from " << r.lines_read << " lines\n";
  });
}

// ---- distractors -------------------------------------------------------------

void AddDistractors(CLI::App &app) {
  struct Args {
    std::string records, knowledge, conceptnet, commonsense, commonsense_url, cooccurrence, out,
        dropped, selection_model;
    int reserve = 5;
    CommonModel model;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("distractors", "Generate and select distractor drafts");
  cmd->add_option("records", args->records, "Records JSONL")->required()->check(CLI::ExistingFile);
  args->model.Add(cmd);
  cmd->add_option("--knowledge", args->knowledge, "relation<TAB>head<TAB>tail")->check(CLI::ExistingFile);
  cmd->add_option("--conceptnet", args->conceptnet, "ConceptNet assertion dump")->check(CLI::ExistingFile);
  cmd->add_option("--commonsense", args->commonsense, "Generated HasProperty tails")
      ->check(CLI::ExistingFile);
  cmd->add_option("--commonsense-url", args->commonsense_url, "HTTP commonsense generator");
  cmd->add_option("--cooccurrence", args->cooccurrence, "Co-occurrence TSV or CoNLL-U")
      ->check(CLI::ExistingFile);
  cmd->add_option("--selection-model", args->selection_model,
                  "Checkpoint that ranks candidates (defaults to --model)");
  cmd->add_option("--reserve", args->reserve, "Replacement candidates kept per record")
      ->capture_default_str();
  cmd->add_option("-o,--out", args->out, "Drafts JSONL")->required();
  cmd->add_option("--dropped", args->dropped, "Dropped records JSONL");
  cmd->callback([args] {
    distractors::KnowledgeBase kb;
    if (!args->knowledge.empty()) kb.LoadTsv(args->knowledge);
    if (!args->conceptnet.empty()) kb.LoadConceptNet(args->conceptnet);
    distractors::GeneratedProperties generated;
    if (!args->commonsense.empty()) generated = distractors::GeneratedProperties(args->commonsense);
    std::optional<distractors::HttpCommonsense> http;
    if (!args->commonsense_url.empty()) http.emplace(args->commonsense_url);
    std::vector<const distractors::RelationLookup *> parts = {&generated};
    if (http) parts.push_back(&*http);
    distractors::CombinedLookup commonsense(parts);
    distractors::CooccurrenceIndex cooccurrence;
    if (!args->cooccurrence.empty()) {
      if (ToLower(fs::path(args->cooccurrence).extension().string()) == ".conllu") {
        cooccurrence.AddConlluFile(args->cooccurrence);
      } else {
        cooccurrence.LoadTsv(args->cooccurrence);
      }
    }
    auto model = Model(args->model.model, args->model.max_len);
    std::unique_ptr<lm::TransformerMaskedLM> selection;
    if (!args->selection_model.empty()) selection = Model(args->selection_model, args->model.max_len);
    auto r = pipeline::DraftDistractors(pipeline::ReadRecords(args->records), kb, commonsense,
                                        cooccurrence, *model, {}, args->reserve, selection.get());
    pipeline::WriteDrafts(args->out, r.drafts);
    if (!args->dropped.empty()) {
      std::vector<json> rows;
      for (const auto &x : r.dropped) rows.push_back({{"record_id", x.record_id}, {"reason", x.reason}});
      WriteJsonl(args->dropped, rows);
    }
    std::cerr << r.drafts.size() << " drafts, " << r.dropped.size() << " dropped\n";
  });
}

// ---- confirm -----------------------------------------------------------------

void AddConfirm(CLI::App &app) {
  struct Args {
    std::string drafts, judgments, transcript, out, excluded;
    int annotators = 3, threshold = 2;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("confirm", "Human confirmation of distractor drafts");
  cmd->add_option("drafts", args->drafts, "Drafts JSONL")->required()->check(CLI::ExistingFile);
  cmd->add_option("--judgments", args->judgments, "Recorded judgments JSONL; interactive when absent")
      ->check(CLI::ExistingFile);
  cmd->add_option("--annotators", args->annotators)->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", args->threshold, "Non-y answers that reject a distractor")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--transcript", args->transcript, "Judgment transcript JSONL");
  cmd->add_option("-o,--out", args->out, "Confirmed drafts JSONL")->required();
  cmd->add_option("--excluded", args->excluded, "Excluded records JSONL");
  cmd->callback([args] {
    std::unique_ptr<distractors::AnnotationSession> session;
    if (args->judgments.empty()) {
      session = std::make_unique<distractors::StreamSession>(std::cin, std::cout);
    } else {
      session = std::make_unique<pipeline::RecordedSession>(args->judgments);
    }
    distractors::ConfirmOptions options;
    options.annotators = args->annotators;
    options.threshold = args->threshold;
    if (!args->transcript.empty()) options.transcript = args->transcript;
    auto result = distractors::ConfirmDistractors(pipeline::ReadDrafts(args->drafts), *session, options);
    pipeline::WriteDrafts(args->out, result.confirmed);
    if (!args->excluded.empty()) {
      std::vector<json> rows;
      for (const auto &x : result.excluded) rows.push_back({{"record_id", x.record_id}, {"reason", x.reason}});
      WriteJsonl(args->excluded, rows);
    }
    std::cerr << result.confirmed.size() << " confirmed, " << result.excluded.size() << " excluded\n";
  });
}

// ---- build -------------------------------------------------------------------

void AddBuild(CLI::App &app) {
  struct Args {
    std::string confirmed, dataset = "built", out;
    uint64_t seed = 0;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("build", "Assemble probe items from confirmed drafts");
  cmd->add_option("confirmed", args->confirmed, "Confirmed drafts JSONL")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", args->seed, "Option order seed")->capture_default_str();
  cmd->add_option("--dataset", args->dataset)->capture_default_str();
  cmd->add_option("-o,--out", args->out, "Probe items JSONL")->required();
  cmd->callback([args] {
    auto items = pipeline::BuildItems(pipeline::ReadDrafts(args->confirmed), args->seed, args->dataset);
    distractors::WriteProbeItems(args->out, items);
    std::cerr << items.size() << " items\n";
  });
}

// ---- finetune ----------------------------------------------------------------

void AddFinetune(CLI::App &app) {
  struct Args {
    std::string records, out, config, objective = "ours", variant = "transe";
    train::TrainConfig train;
    int max_steps = 0;
    CommonModel model;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("finetune", "Fine-tune a masked LM on simile records");
  cmd->add_option("records", args->records, "Supervision records JSONL")->required()->check(CLI::ExistingFile);
  args->model.Add(cmd);
  cmd->add_option("--config", args->config, "Training config JSON")->check(CLI::ExistingFile);
  cmd->add_option("--objective", args->objective, "mlm or ours")
      ->check(CLI::IsMember({"mlm", "ours"}))
      ->capture_default_str();
  cmd->add_option("--ke-variant", args->variant, "transe, transh or transd")->capture_default_str();
  cmd->add_option("--alpha", args->train.alpha)->capture_default_str();
  cmd->add_option("--batch-size", args->train.batch_size)->capture_default_str();
  cmd->add_option("--lr", args->train.learning_rate)->capture_default_str();
  cmd->add_option("--epochs", args->train.epochs)->capture_default_str();
  cmd->add_option("--seed", args->train.seed)->capture_default_str();
  cmd->add_option("--max-steps", args->max_steps, "Stop after this many steps (0: no limit)");
  cmd->add_option("-o,--out", args->out, "Run directory")->required();
  cmd->callback([args] {
    train::TrainConfig config = args->train;
    if (!args->config.empty()) config = train::TrainConfig::FromJson(json::parse(ReadFile(args->config)));
    config.ke_variant = train::ParseKeVariant(args->variant);
    config.max_len = args->model.max_len;
    if (args->objective == "mlm") {
      config.ke_variant = train::KeVariant::kNone;
      config.alpha = 0.0;
    }
    auto model = Model(args->model.model, args->model.max_len);
    train::FinetuneOptions options;
    options.run_dir = args->out;
    options.max_steps = args->max_steps;
    options.on_step = [](const train::StepLog &s) {
      if (s.step % 50 == 0) {
        std::cerr << "step " << s.step << " epoch " << s.epoch << " loss " << s.total << "\n";
      }
    };
    auto result = train::Finetune(pipeline::ReadRecords(args->records), *model, config, options);
    std::cerr << result.steps.size() << " steps, " << result.dropped_records
              << " records dropped, checkpoint " << result.checkpoint.string() << "\n";
  });
}

// ---- eval / ablate -----------------------------------------------------------

void AddEval(CLI::App &app) {
  struct Args {
    ItemsArgs items;
    CommonModel model;
    std::string setting = "zero_shot", out, csv, baseline, embeddings;
    std::vector<uint64_t> seeds = {0, 1, 2};
    bool predictions = true;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("eval", "Score probe items with a masked LM or a baseline");
  args->items.Add(cmd);
  args->model.Add(cmd);
  cmd->add_option("--setting", args->setting, "Setting label stored in the report")->capture_default_str();
  cmd->add_option("--seeds", args->seeds)->capture_default_str();
  cmd->add_option("--baseline", args->baseline, "emb or conscore")->check(CLI::IsMember({"emb", "conscore"}));
  cmd->add_option("--embeddings", args->embeddings, "Static word vectors for baselines")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", args->out, "Report JSON");
  cmd->add_option("--csv", args->csv, "Flat CSV rows");
  cmd->callback([args] {
    const auto items = args->items.Load();
    auto model = Model(args->model.model, args->model.max_len);
    eval::ExperimentReport report;
    if (args->baseline.empty()) {
      report = eval::Evaluate(items, *model, eval::ParseSetting(args->setting), args->seeds);
    } else {
      std::optional<lm::EmbeddingTable> table;
      if (!args->embeddings.empty()) table = lm::EmbeddingTable::Load(args->embeddings);
      report = eval::EvaluateBaseline(
          items, args->baseline == "emb" ? eval::Baseline::kEmb : eval::Baseline::kConScore,
          eval::TableVectors(table ? &*table : nullptr, model.get()));
    }
    Emit(args->out, eval::ReportToJson(report).dump(2) + "\n");
    if (!args->csv.empty()) WriteFileAtomic(args->csv, eval::ReportsToCsv({report}));
    std::cerr << report.model_name << " " << report.setting_label() << ": mean accuracy "
              << report.mean_accuracy() << " over " << report.runs.size() << " seeds";
    if (report.skipped > 0) std::cerr << ", " << report.skipped << " skipped";
    std::cerr << "\n";
  });
}

void AddAblate(CLI::App &app) {
  struct Args {
    ItemsArgs items;
    CommonModel model;
    std::string component, out, reference;
    std::vector<uint64_t> seeds = {0, 1, 2};
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("ablate", "Evaluate with one simile component hidden");
  args->items.Add(cmd);
  args->model.Add(cmd);
  cmd->add_option("-c,--component", args->component, "topic, vehicle, event, comparator or random")
      ->required();
  cmd->add_option("--seeds", args->seeds)->capture_default_str();
  cmd->add_option("-o,--out", args->out, "Ablated report JSON");
  cmd->add_option("--reference", args->reference, "Unablated report on the kept items");
  cmd->callback([args] {
    const auto items = args->items.Load();
    auto model = Model(args->model.model, args->model.max_len);
    auto result = eval::EvaluateAblation(items, eval::ParseComponent(args->component), *model, args->seeds);
    Emit(args->out, eval::ReportToJson(result.ablated).dump(2) + "\n");
    auto reference = eval::Evaluate(result.kept, *model, eval::Setting::kZeroShot, args->seeds);
    if (!args->reference.empty()) {
      WriteFileAtomic(args->reference, eval::ReportToJson(reference).dump(2) + "\n");
    }
    std::cerr << "kept " << result.kept.size() << ", dropped " << result.dropped << "; accuracy "
              << reference.mean_accuracy() << " -> " << result.ablated.mean_accuracy() << "\n";
  });
}

// ---- sentiment ---------------------------------------------------------------

void AddSentiment(CLI::App &app) {
  struct Args {
    std::string reviews, out;
    CommonModel model;
    sentiment::HeadConfig head;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("sentiment", "Train a sentiment head on a frozen encoder");
  cmd->add_option("reviews", args->reviews, "Reviews (JSONL, JSON, CSV or TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  args->model.Add(cmd);
  cmd->add_option("--lrs", args->head.learning_rates)->capture_default_str();
  cmd->add_option("--epochs", args->head.epochs)->capture_default_str();
  cmd->add_option("--batch-size", args->head.batch_size)->capture_default_str();
  cmd->add_option("--seed", args->head.seed)->capture_default_str();
  cmd->add_option("-o,--out", args->out, "Report JSON");
  cmd->callback([args] {
    auto model = Model(args->model.model, args->model.max_len);
    const auto dataset = sentiment::PrepareReviews(sentiment::ReadReviews(args->reviews), args->head.seed);
    auto report = sentiment::RunSentimentProbe(dataset, *model, args->head);
    Emit(args->out, sentiment::SentimentReportToJson(report).dump(2) + "\n");
    std::cerr << "test accuracy " << report.head.test_accuracy << " (lr " << report.head.learning_rate
              << ", epoch " << report.head.best_epoch << ")\n";
  });
}

// ---- analyze -----------------------------------------------------------------

void AddAnalyze(CLI::App &app) {
  auto *cmd = app.add_subcommand("analyze", "Representation and accuracy analysis");
  cmd->require_subcommand(1);

  struct DistanceArgs {
    std::string records;
    ItemsArgs items;
    CommonModel model;
    std::string out;
    int layer = -1;
  };
  auto d = std::make_shared<DistanceArgs>();
  auto *dist = cmd->add_subcommand("distances", "Mean topic/property/vehicle L2 distances");
  auto *rec_opt = dist->add_option("--records", d->records, "Simile records JSONL")->check(CLI::ExistingFile);
  auto *items_opt = dist->add_option("-i,--items", d->items.items, "Probe items JSONL")->check(CLI::ExistingFile);
  dist->add_option("--released", d->items.released, "Read --items as a published dataset");
  rec_opt->excludes(items_opt);
  d->model.Add(dist);
  dist->add_option("--layer", d->layer)->capture_default_str();
  dist->add_option("-o,--out", d->out, "CSV");
  dist->callback([d] {
    std::vector<mining::SimileRecord> records;
    if (!d->records.empty()) {
      records = pipeline::ReadRecords(d->records);
    } else {
      Require(!d->items.items.empty(), ErrorCode::kPrecondition, "--records or --items is required");
      for (const auto &item : d->items.Load()) records.push_back(pipeline::RecordFromItem(item));
    }
    auto model = Model(d->model.model, d->model.max_len);
    auto summary = analysis::ComponentDistances(records, *model, d->layer);
    Emit(d->out, std::string(analysis::kDistanceCsvHeader) + "\n" +
                     analysis::DistanceCsvRow(model->name(), summary) + "\n");
  });

  struct PcaArgs {
    std::string sentence, out;
    CommonModel model;
    int layer = -1;
  };
  auto p = std::make_shared<PcaArgs>();
  auto *pca = cmd->add_subcommand("pca", "2D PCA of one sentence's token states");
  pca->add_option("sentence", p->sentence, "Whitespace tokenized sentence")->required();
  p->model.Add(pca);
  pca->add_option("--layer", p->layer)->capture_default_str();
  pca->add_option("-o,--out", p->out, "CSV");
  pca->callback([p] {
    auto model = Model(p->model.model, p->model.max_len);
    const auto tokens = SplitWhitespace(p->sentence);
    Emit(p->out, analysis::PcaToCsv(tokens, analysis::PcaCoords(tokens, *model, p->layer)));
  });

  struct CategoryArgs {
    std::string report, out;
    std::optional<uint64_t> seed;
  };
  auto c = std::make_shared<CategoryArgs>();
  auto *cat = cmd->add_subcommand("categories", "Accuracy per property category");
  cat->add_option("report", c->report, "Report JSON with predictions")->required()->check(CLI::ExistingFile);
  cat->add_option("--seed", c->seed, "Seed run to use (default: all runs pooled)");
  cat->add_option("-o,--out", c->out, "CSV");
  cat->callback([c] {
    const auto report = eval::ReportFromJson(json::parse(ReadFile(c->report)));
    std::vector<eval::Prediction> predictions;
    for (const auto &run : report.runs) {
      if (c->seed && run.seed != *c->seed) continue;
      predictions.insert(predictions.end(), run.predictions.begin(), run.predictions.end());
    }
    Require(!predictions.empty(), ErrorCode::kPrecondition, "no predictions for the requested seed");
    const auto breakdown = analysis::BreakdownByCategory(predictions);
    Emit(c->out, analysis::CategoryToCsv(breakdown));
    if (breakdown.unlabeled > 0) std::cerr << breakdown.unlabeled << " predictions without a category\n";
  });
}

// ---- quiz --------------------------------------------------------------------

void AddQuiz(CLI::App &app) {
  struct Args {
    ItemsArgs items;
    std::string out, transcript;
    size_t count = 100;
    eval::QuizOptions options;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("quiz", "Interactive human baseline on sampled items");
  args->items.Add(cmd);
  cmd->add_option("-n,--count", args->count, "Items to sample")->capture_default_str();
  cmd->add_option("--annotators", args->options.annotators)->capture_default_str();
  cmd->add_option("--seed", args->options.seed)->capture_default_str();
  cmd->add_option("--transcript", args->transcript, "Answer transcript JSONL");
  cmd->add_option("-o,--out", args->out, "Report JSON");
  cmd->callback([args] {
    const auto sample = eval::SampleItems(args->items.Load(), args->count, args->options.seed);
    if (!args->transcript.empty()) args->options.transcript = args->transcript;
    eval::StreamQuizSession session(std::cin, std::cout);
    auto report = eval::HumanQuiz(sample, session, args->options);
    Emit(args->out, eval::ReportToJson(report).dump(2) + "\n");
    std::cerr << "human accuracy " << report.mean_accuracy() << "\n";
  });
}

// ---- import ------------------------------------------------------------------

void AddImport(CLI::App &app) {
  struct Args {
    std::string file, dataset, out;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("import", "Convert a published probe file to probe items");
  cmd->add_option("file", args->file)->required()->check(CLI::ExistingFile);
  cmd->add_option("-d,--dataset", args->dataset, "general_corpus, quizzes or another name")->required();
  cmd->add_option("-o,--out", args->out, "Probe items JSONL")->required();
  cmd->callback([args] {
    auto result = pipeline::ImportReleasedDataset(args->file, args->dataset);
    distractors::WriteProbeItems(args->out, result.items);
    if (!result.warning.empty()) std::cerr << "warning: " << result.warning << "\n";
    std::cerr << result.items.size() << " items\n";
  });
}

// ---- run ---------------------------------------------------------------------

void AddRun(CLI::App &app) {
  struct Args {
    std::string config;
    bool interactive = false;
  };
  auto args = std::make_shared<Args>();
  auto *cmd = app.add_subcommand("run", "Run the configured pipeline with caching");
  cmd->add_option("config", args->config, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--interactive", args->interactive, "Confirm distractors on the terminal");
  cmd->callback([args] {
    auto config = pipeline::ExperimentConfig::Load(args->config);
    pipeline::RunOptions options;
    options.log = &std::cerr;
    std::optional<distractors::StreamSession> session;
    if (args->interactive) {
      session.emplace(std::cin, std::cout);
      options.session = &*session;
    }
    auto summary = pipeline::RunPipeline(config, options);
    for (const auto &s : summary.stages) {
      std::cout << pipeline::StageName(s.stage) << "\t" << (s.cached ? "cached" : "ran") << "\n";
    }
    std::cout << summary.run_dir.string() << "\n";
  });
}

int ExitCodeFor(const Error &e) {
  switch (e.code()) {
    case ErrorCode::kStageFailure:
    case ErrorCode::kInternal:
      return kExitStageFailure;
    default:
      return kExitPrecondition;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Simile property probing toolkit"};
  app.set_version_flag("--version", simprobe::pipeline::VersionString());
  app.require_subcommand(1);
  AddMine(app);
  AddDistractors(app);
  AddConfirm(app);
  AddBuild(app);
  AddFinetune(app);
  AddEval(app);
  AddAblate(app);
  AddSentiment(app);
  AddAnalyze(app);
  AddQuiz(app);
  AddImport(app);
  AddRun(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitPrecondition;
  } catch (const simprobe::Error &e) {
    std::cerr << "error (" << simprobe::ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStageFailure;
  }
  return kExitOk;
}
