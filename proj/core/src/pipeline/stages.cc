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

#include "simprobe/pipeline/stages.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"
#include "simprobe/distractors/build_probe.h"
#include "simprobe/distractors/select.h"
#include "simprobe/mining/annotate.h"
#include "simprobe/mining/position.h"

namespace simprobe::pipeline {

namespace fs = std::filesystem;
using distractors::DistractorCandidate;
using distractors::DraftProbe;
using nlohmann::json;

std::vector<mining::SimileRecord> ReadRecords(const fs::path &path) {
  std::vector<mining::SimileRecord> records;
  const auto rows = ReadJsonl(path);
  records.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    try {
      records.push_back(rows[i].get<mining::SimileRecord>());
    } catch (const json::exception &e) {
      Fail(ErrorCode::kDataLoss, path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return records;
}

void WriteRecords(const fs::path &path, const std::vector<mining::SimileRecord> &records) {
  std::vector<json> rows(records.begin(), records.end());
  WriteJsonl(path, rows);
}

std::optional<mining::DependencyParse> FallbackParser::Parse(
    const std::vector<std::string> &tokens) const {
  if (auto parse = primary_.Parse(tokens)) return parse;
  return fallback_.Parse(tokens);
}

MineResult MineRecords(const std::vector<std::string> &lines, const mining::PosTagger &tagger,
                       const mining::DependencyParser &parser,
                       const mining::SynonymLookup *synonyms,
                       const mining::ExtractOptions &options) {
  const mining::ExtractResult extracted = mining::ExtractSimiles(lines, tagger, options);
  MineResult out;
  out.lines_read = extracted.lines_read;
  out.lines_skipped = extracted.lines_skipped;
  const mining::SynonymTable empty;
  const mining::SynonymLookup &lookup = synonyms ? *synonyms : empty;
  for (const auto &raw : extracted.records) {
    mining::SimileRecord record = mining::AnnotateComponents(raw, parser);
    record.position = mining::ClassifyPosition(record);
    mining::NormalizeResult normalized = mining::NormalizeProperty(record, lookup);
    if (!normalized.record) {
      ++out.dropped_no_synonym;
      continue;
    }
    if (!mining::Validate(*normalized.record).empty()) {
      ++out.dropped_invalid;
      continue;
    }
    if (normalized.record->needs_review) ++out.needs_review;
    out.records.push_back(std::move(*normalized.record));
  }
  return out;
}

json DraftToJson(const DraftProbe &draft) {
  return json{{"record", draft.record}, {"selected", draft.selected}, {"reserve", draft.reserve}};
}

DraftProbe DraftFromJson(const json &j) {
  DraftProbe draft;
  draft.record = j.at("record").get<mining::SimileRecord>();
  draft.selected = j.at("selected").get<std::vector<DistractorCandidate>>();
  draft.reserve = j.value("reserve", std::vector<DistractorCandidate>{});
  return draft;
}

std::vector<DraftProbe> ReadDrafts(const fs::path &path) {
  std::vector<DraftProbe> drafts;
  const auto rows = ReadJsonl(path);
  for (size_t i = 0; i < rows.size(); ++i) {
    try {
      drafts.push_back(DraftFromJson(rows[i]));
    } catch (const json::exception &e) {
      Fail(ErrorCode::kDataLoss, path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return drafts;
}

void WriteDrafts(const fs::path &path, const std::vector<DraftProbe> &drafts) {
  std::vector<json> rows;
  rows.reserve(drafts.size());
  for (const auto &d : drafts) rows.push_back(DraftToJson(d));
  WriteJsonl(path, rows);
}

DraftResult DraftDistractors(const std::vector<mining::SimileRecord> &records,
                             const distractors::RelationLookup &kb,
                             const distractors::RelationLookup &commonsense,
                             const distractors::CooccurrenceIndex &cooccurrence,
                             const lm::MaskedLanguageModel &model,
                             const distractors::GenerateOptions &options, int reserve,
                             const lm::MaskedLanguageModel *selection_model) {
  const distractors::LmFeatureEncoder encoder(selection_model ? *selection_model : model);
  DraftResult out;
  for (const auto &record : records) {
    auto candidates = distractors::FilterSingleToken(
        distractors::GenerateCandidates(record, kb, commonsense, cooccurrence, options), model);
    if (static_cast<int>(candidates.size()) < distractors::kNumDistractors) {
      out.dropped.push_back({record.id, "fewer than 3 single-token candidates"});
      continue;
    }
    auto ranked = distractors::RankDistractors(record, std::move(candidates), encoder);
    DraftProbe draft;
    draft.record = record;
    const auto split = ranked.begin() + distractors::kNumDistractors;
    draft.selected.assign(ranked.begin(), split);
    const auto reserve_end =
        ranked.begin() + std::min<long>(static_cast<long>(ranked.size()),
                                        distractors::kNumDistractors + std::max(0, reserve));
    draft.reserve.assign(split, reserve_end);
    out.drafts.push_back(std::move(draft));
  }
  return out;
}

RecordedSession::RecordedSession(const fs::path &path) {
  const auto rows = ReadJsonl(path);
  for (size_t i = 0; i < rows.size(); ++i) {
    try {
      const json &row = rows[i];
      const std::string code = row.at("judgment").get<std::string>();
      Require(code.size() == 1, ErrorCode::kDataLoss, "judgment must be one of y, n, u");
      judgments_[{row.at("record_id").get<std::string>(), ToLower(row.at("candidate").get<std::string>()),
                  row.at("annotator").get<int>()}] = distractors::ParseJudgment(code[0]);
    } catch (const std::exception &e) {
      Fail(ErrorCode::kDataLoss, path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
}

distractors::Judgment RecordedSession::Judge(int annotator, const DraftProbe &draft,
                                             const DistractorCandidate &candidate) {
  auto it = judgments_.find({draft.record.id, ToLower(candidate.word), annotator});
  if (it == judgments_.end()) {
    Fail(ErrorCode::kPrecondition, "no recorded judgment for record " + draft.record.id +
                                       ", candidate \"" + candidate.word + "\", annotator " +
                                       std::to_string(annotator));
  }
  return it->second;
}

std::vector<distractors::ProbeItem> BuildItems(const std::vector<DraftProbe> &confirmed,
                                               uint64_t seed, const std::string &dataset) {
  std::vector<distractors::ProbeItem> items;
  items.reserve(confirmed.size());
  for (const auto &draft : confirmed) {
    items.push_back(distractors::BuildProbe(draft.record, draft.selected, seed, dataset));
  }
  return items;
}

namespace {

std::string Canonical(const std::string &name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(c));
  }
  return out;
}

}  // namespace

std::optional<long> ExpectedItemCount(const std::string &dataset) {
  const std::string key = Canonical(dataset);
  if (key == "generalcorpus" || key == "general") return 775;
  if (key == "quizzes" || key == "quiz") return 858;
  return std::nullopt;
}

ImportResult ImportReleasedDataset(const fs::path &path, const std::string &dataset) {
  ImportResult out;
  out.items = distractors::ReadReleasedItems(path, dataset);
  for (size_t i = 0; i < out.items.size(); ++i) {
    const auto problems = distractors::Validate(out.items[i]);
    if (!problems.empty()) {
      Fail(ErrorCode::kDataLoss, path.string() + ": item " + std::to_string(i) + " (" +
                                     out.items[i].record_id + "): " + Join(problems, "; "));
    }
  }
  out.expected = ExpectedItemCount(dataset);
  const long got = static_cast<long>(out.items.size());
  if (out.expected && *out.expected != got) {
    std::ostringstream w;
    w << dataset << ": expected " << *out.expected << " items, read " << got << " ("
      << (got > *out.expected ? "+" : "") << got - *out.expected << ") from " << path.string();
    std::map<std::string, long> by_category;
    for (const auto &item : out.items) {
      ++by_category[item.category ? std::string(mining::CategoryName(*item.category)) : "none"];
    }
    w << "; by category:";
    for (const auto &[name, n] : by_category) w << " " << name << "=" << n;
    if (!out.items.empty()) w << "; last item " << out.items.back().record_id;
    out.warning = w.str();
  }
  return out;
}

mining::SimileRecord RecordFromItem(const distractors::ProbeItem &item) {
  const int mask = item.mask_index();
  Require(mask >= 0, ErrorCode::kInvalidArgument, "item " + item.record_id + " has no mask");
  mining::SimileRecord record;
  record.id = item.record_id;
  record.tokens = item.masked_tokens;
  record.tokens[static_cast<size_t>(mask)] = item.answer();
  record.property = {mask, mask + 1};
  record.topic = item.spans.topic;
  record.vehicle = item.spans.vehicle;
  record.event = item.spans.event;
  record.comparators = item.spans.comparators;
  record.category = item.category;
  record.position = mining::ClassifyPosition(record);
  return record;
}

std::unique_ptr<lm::TransformerMaskedLM> LoadModel(const std::string &name_or_path,
                                                   int max_length) {
  auto model = lm::TransformerMaskedLM::Load(lm::ResolveCheckpoint(name_or_path), max_length);
  fs::path p = fs::path(name_or_path).lexically_normal();
  if (p.filename().empty()) p = p.parent_path();
  model->set_name(p.filename().string());
  return model;
}

}  // namespace simprobe::pipeline
