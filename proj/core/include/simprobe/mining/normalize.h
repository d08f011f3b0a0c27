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

#ifndef SIMPROBE_MINING_NORMALIZE_H_
#define SIMPROBE_MINING_NORMALIZE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simprobe/mining/simile_record.h"

namespace simprobe::mining {

class SynonymLookup {
 public:
  virtual ~SynonymLookup() = default;
  // Synonyms of a (possibly multi-word) phrase, best first.
  virtual std::vector<std::string> Synonyms(std::string_view phrase) const = 0;
};

// In-memory synonym table keyed by lower-cased phrase.
class SynonymTable : public SynonymLookup {
 public:
  SynonymTable() = default;
  // Lines of "phrase<TAB>synonym[<TAB>synonym...]".
  explicit SynonymTable(const std::filesystem::path &path);

  void Add(std::string_view phrase, std::string_view synonym);
  std::vector<std::string> Synonyms(std::string_view phrase) const override;
  size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::vector<std::string>> table_;
};

enum class DropReason { kNone, kNoSingleTokenSynonym };

std::string_view DropReasonName(DropReason reason);

struct NormalizeResult {
  std::optional<SimileRecord> record;
  DropReason reason = DropReason::kNone;
};

// Replaces a multi-token property by its first single-token synonym.
// Single-token properties pass through unchanged.
NormalizeResult NormalizeProperty(const SimileRecord &record,
                                  const SynonymLookup &synonyms);

}  // namespace simprobe::mining

#endif  // SIMPROBE_MINING_NORMALIZE_H_
