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

#ifndef SIMPROBE_DISTRACTORS_PROBE_ITEM_H_
#define SIMPROBE_DISTRACTORS_PROBE_ITEM_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/common/token_span.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::distractors {

inline constexpr int kNumOptions = 4;
inline constexpr int kNumDistractors = 3;
// Origin tag for items whose distractor provenance is not recorded.
inline constexpr std::string_view kUnknownOrigin = "unknown";

// Component spans of a probe sentence, in masked-token coordinates.
struct ProbeSpans {
  TokenSpan topic;
  TokenSpan vehicle;
  TokenSpan event;
  std::vector<TokenSpan> comparators;

  bool operator==(const ProbeSpans &) const = default;
};

// A masked simile with four options, exactly one of them the gold property.
struct ProbeItem {
  std::string record_id;
  std::vector<std::string> masked_tokens;
  std::vector<std::string> options;
  int answer_index = 0;
  std::vector<std::string> origins;
  std::string dataset;
  std::optional<mining::Category> category;
  ProbeSpans spans;

  const std::string &answer() const { return options.at(static_cast<size_t>(answer_index)); }
  // Index of the mask sentinel in masked_tokens, or -1.
  int mask_index() const;

  bool operator==(const ProbeItem &) const = default;
};

// Invariant violations; empty when the item is valid.
std::vector<std::string> Validate(const ProbeItem &item);

void to_json(nlohmann::json &j, const ProbeItem &item);
void from_json(const nlohmann::json &j, ProbeItem &item);

std::vector<ProbeItem> ReadProbeItems(const std::filesystem::path &path);
void WriteProbeItems(const std::filesystem::path &path, const std::vector<ProbeItem> &items);

// Format shim for externally published probe files. Accepts JSON (array or
// an object with a "data"/"items"/"examples" array), JSONL, CSV and TSV with
// loosely named fields:
//   sentence:  masked_tokens | masked_sentence | sentence | question | text
//   options:   options | choices | candidates, or option_a..option_d / A..D
//   answer:    answer_index | label | answer | gold | property
//              (0-based index, letter A-D, or the answer word)
//   components (optional): topic | tenor, vehicle, event, comparator
//   category (optional), id (optional)
// Mask spellings "[MASK]", "<mask>" and runs of underscores are accepted.
// When the sentence has no mask, the first occurrence of the answer word is
// masked.
ProbeItem ItemFromReleased(const nlohmann::json &row, const std::string &dataset, int index);
std::vector<ProbeItem> ReadReleasedItems(const std::filesystem::path &path,
                                         const std::string &dataset);

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_PROBE_ITEM_H_
