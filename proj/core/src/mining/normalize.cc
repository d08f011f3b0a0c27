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

#include "simprobe/mining/normalize.h"

#include <algorithm>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"
#include "simprobe/mining/position.h"

namespace simprobe::mining {
namespace {

bool IsSingleToken(std::string_view word) {
  std::string w(Trim(word));
  if (w.empty()) return false;
  return TokenizeWords(w).size() == 1 && !IsPunctuationToken(w);
}

}  // namespace

SynonymTable::SynonymTable(const std::filesystem::path &path) {
  for (const std::string &line : ReadLines(path)) {
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> fields = Split(trimmed, '\t');
    for (size_t i = 1; i < fields.size(); ++i) Add(fields[0], fields[i]);
  }
}

void SynonymTable::Add(std::string_view phrase, std::string_view synonym) {
  std::string key = ToLower(Trim(phrase));
  std::string value(Trim(synonym));
  if (key.empty() || value.empty()) return;
  auto &values = table_[key];
  if (std::find(values.begin(), values.end(), value) == values.end()) {
    values.push_back(value);
  }
}

std::vector<std::string> SynonymTable::Synonyms(std::string_view phrase) const {
  auto it = table_.find(ToLower(Trim(phrase)));
  if (it == table_.end()) return {};
  return it->second;
}

std::string_view DropReasonName(DropReason reason) {
  switch (reason) {
    case DropReason::kNone: return "none";
    case DropReason::kNoSingleTokenSynonym: return "no_single_token_synonym";
  }
  return "unknown";
}

NormalizeResult NormalizeProperty(const SimileRecord &record,
                                  const SynonymLookup &synonyms) {
  Require(!record.property.empty(), ErrorCode::kPrecondition,
          "record has no property span");
  if (record.property.size() == 1) return {record, DropReason::kNone};

  const std::string phrase = record.PropertyText();
  std::optional<std::string> replacement;
  for (const std::string &candidate : synonyms.Synonyms(phrase)) {
    if (IsSingleToken(candidate)) {
      replacement = std::string(Trim(candidate));
      break;
    }
  }
  if (!replacement) return {std::nullopt, DropReason::kNoSingleTokenSynonym};

  SimileRecord out = record;
  const TokenSpan old = record.property;
  out.tokens.erase(out.tokens.begin() + old.begin, out.tokens.begin() + old.end);
  out.tokens.insert(out.tokens.begin() + old.begin, *replacement);
  out.property = {old.begin, old.begin + 1};
  out.topic = ShiftSpan(record.topic, old, 1);
  out.vehicle = ShiftSpan(record.vehicle, old, 1);
  out.event = ShiftSpan(record.event, old, 1);
  for (TokenSpan &c : out.comparators) c = ShiftSpan(c, old, 1);
  out.position = ClassifyPosition(out);
  return {std::move(out), DropReason::kNone};
}

}  // namespace simprobe::mining
