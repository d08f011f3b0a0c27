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

#ifndef SIMPROBE_PIPELINE_STAGES_H_
#define SIMPROBE_PIPELINE_STAGES_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/distractors/confirm.h"
#include "simprobe/distractors/cooccurrence.h"
#include "simprobe/distractors/generate.h"
#include "simprobe/distractors/knowledge.h"
#include "simprobe/distractors/probe_item.h"
#include "simprobe/lm/masked_lm.h"
#include "simprobe/mining/extract.h"
#include "simprobe/mining/normalize.h"
#include "simprobe/mining/parse.h"
#include "simprobe/mining/pos.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::pipeline {

// ---- records ---------------------------------------------------------------

std::vector<mining::SimileRecord> ReadRecords(const std::filesystem::path &path);
void WriteRecords(const std::filesystem::path &path,
                  const std::vector<mining::SimileRecord> &records);

// ---- mining ----------------------------------------------------------------

struct MineResult {
  std::vector<mining::SimileRecord> records;
  int lines_read = 0;
  int lines_skipped = 0;
  long dropped_no_synonym = 0;
  long dropped_invalid = 0;
  long needs_review = 0;
};

// Extraction, component annotation and property normalization. Records that
// fail validation after annotation are dropped and counted. `synonyms` may
// be null, in which case multi-token properties are dropped.
MineResult MineRecords(const std::vector<std::string> &lines, const mining::PosTagger &tagger,
                       const mining::DependencyParser &parser,
                       const mining::SynonymLookup *synonyms,
                       const mining::ExtractOptions &options = {});

// Serves parses from `primary` and falls back to `fallback` for sentences it
// does not cover.
class FallbackParser : public mining::DependencyParser {
 public:
  FallbackParser(const mining::DependencyParser &primary, const mining::DependencyParser &fallback)
      : primary_(primary), fallback_(fallback) {}
  std::optional<mining::DependencyParse> Parse(
      const std::vector<std::string> &tokens) const override;

 private:
  const mining::DependencyParser &primary_;
  const mining::DependencyParser &fallback_;
};

// ---- distractor drafts -----------------------------------------------------

nlohmann::json DraftToJson(const distractors::DraftProbe &draft);
distractors::DraftProbe DraftFromJson(const nlohmann::json &j);
std::vector<distractors::DraftProbe> ReadDrafts(const std::filesystem::path &path);
void WriteDrafts(const std::filesystem::path &path,
                 const std::vector<distractors::DraftProbe> &drafts);

struct DraftResult {
  std::vector<distractors::DraftProbe> drafts;
  std::vector<distractors::ExcludedProbe> dropped;
};

// Generates, filters to single-subtoken words and ranks candidates by
// sentence similarity. The top three are selected; up to `reserve` more are
// kept for replacement. Records with fewer than three candidates are dropped.
// Candidates are filtered with `model` and ranked with `selection_model`
// (`model` when null).
DraftResult DraftDistractors(const std::vector<mining::SimileRecord> &records,
                             const distractors::RelationLookup &kb,
                             const distractors::RelationLookup &commonsense,
                             const distractors::CooccurrenceIndex &cooccurrence,
                             const lm::MaskedLanguageModel &model,
                             const distractors::GenerateOptions &options = {}, int reserve = 5,
                             const lm::MaskedLanguageModel *selection_model = nullptr);

// Replays annotations recorded as JSONL rows of
//   {"record_id", "candidate", "annotator", "judgment": "y"|"n"|"u"}.
// A missing row raises kPrecondition.
class RecordedSession : public distractors::AnnotationSession {
 public:
  explicit RecordedSession(const std::filesystem::path &path);
  distractors::Judgment Judge(int annotator, const distractors::DraftProbe &draft,
                              const distractors::DistractorCandidate &candidate) override;
  size_t size() const { return judgments_.size(); }

 private:
  std::map<std::tuple<std::string, std::string, int>, distractors::Judgment> judgments_;
};

// ---- probe building --------------------------------------------------------

std::vector<distractors::ProbeItem> BuildItems(const std::vector<distractors::DraftProbe> &confirmed,
                                               uint64_t seed, const std::string &dataset);

// ---- released datasets -----------------------------------------------------

struct ImportResult {
  std::vector<distractors::ProbeItem> items;
  std::optional<long> expected;
  // Empty when the count matches or no count is known for the dataset.
  std::string warning;
};

// Published item counts, keyed by dataset name ("general_corpus",
// "quizzes"; case and separators are ignored).
std::optional<long> ExpectedItemCount(const std::string &dataset);

// Reads a published probe file. Every item must validate; a count that
// differs from the published one produces a warning with a diff report.
ImportResult ImportReleasedDataset(const std::filesystem::path &path, const std::string &dataset);

// ---- helpers ---------------------------------------------------------------

// The unmasked simile behind a probe item: the answer fills the mask and
// becomes the property span.
mining::SimileRecord RecordFromItem(const distractors::ProbeItem &item);

std::unique_ptr<lm::TransformerMaskedLM> LoadModel(const std::string &name_or_path,
                                                   int max_length = lm::kDefaultMaxLength);

}  // namespace simprobe::pipeline

#endif  // SIMPROBE_PIPELINE_STAGES_H_
