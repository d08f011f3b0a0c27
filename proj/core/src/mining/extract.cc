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

#include "simprobe/mining/extract.h"

#include "simprobe/common/text.h"
#include "simprobe/mining/position.h"

namespace simprobe::mining {
namespace {

bool IsArticle(const std::string &word) {
  return EqualsIgnoreCase(word, "a") || EqualsIgnoreCase(word, "an") ||
         EqualsIgnoreCase(word, "the");
}

bool IsVehicleNoun(Upos tag) { return tag == Upos::kNoun || tag == Upos::kPropn; }

// Words that may sit between the determiner and the vehicle noun.
bool IsModifier(Upos tag) {
  return tag == Upos::kAdj || tag == Upos::kNoun || tag == Upos::kPropn ||
         tag == Upos::kVerb || tag == Upos::kAdv || tag == Upos::kNum;
}

// Returns the index of the vehicle head noun starting the search at `from`,
// or -1. The head is the last noun of the first noun run in the window.
int FindVehicle(const std::vector<TaggedToken> &tagged, int from,
                int max_intervening) {
  const int n = static_cast<int>(tagged.size());
  const int last = from + max_intervening;
  for (int j = from; j < n && j <= last; ++j) {
    if (IsVehicleNoun(tagged[j].tag)) {
      int head = j;
      while (head + 1 < n && head + 1 <= last && IsVehicleNoun(tagged[head + 1].tag)) {
        ++head;
      }
      return head;
    }
    if (!IsModifier(tagged[j].tag)) return -1;
  }
  return -1;
}

}  // namespace

std::vector<SimileRecord> MatchTaggedSentence(
    const std::vector<TaggedToken> &tagged, const ExtractOptions &options) {
  std::vector<SimileRecord> out;
  const int n = static_cast<int>(tagged.size());
  for (int i = 0; i + 3 < n; ++i) {
    if (!EqualsIgnoreCase(tagged[i].word, "as") ||
        tagged[i + 1].tag != Upos::kAdj ||
        !EqualsIgnoreCase(tagged[i + 2].word, "as")) {
      continue;
    }
    int vehicle = -1;
    if (options.mode == PatternMode::kClosedSimile) {
      if (!IsArticle(tagged[i + 3].word)) continue;
      vehicle = FindVehicle(tagged, i + 4, options.max_intervening);
    } else {
      bool noun_before = false;
      for (int k = 0; k < i; ++k) {
        noun_before = noun_before || IsVehicleNoun(tagged[k].tag);
      }
      if (!noun_before) continue;
      int from = i + 3;
      if (from < n && tagged[from].tag == Upos::kDet) ++from;
      vehicle = FindVehicle(tagged, from, options.max_intervening);
    }
    if (vehicle < 0) continue;

    SimileRecord record;
    record.tokens.reserve(tagged.size());
    for (const TaggedToken &t : tagged) record.tokens.push_back(t.word);
    record.property = {i + 1, i + 2};
    record.vehicle = {vehicle, vehicle + 1};
    record.comparators = {{i, i + 1}, {i + 2, i + 3}};
    record.source = options.source;
    record.position = ClassifyPosition(record);
    out.push_back(std::move(record));
    i += 2;
  }
  return out;
}

ExtractResult ExtractSimiles(const std::vector<std::string> &lines,
                             const PosTagger &tagger,
                             const ExtractOptions &options) {
  ExtractResult result;
  for (size_t line_no = 0; line_no < lines.size(); ++line_no) {
    ++result.lines_read;
    if (Trim(lines[line_no]).empty()) continue;
    auto tagged = tagger.Tag(lines[line_no]);
    if (!tagged) {
      ++result.lines_skipped;
      continue;
    }
    std::vector<SimileRecord> matches = MatchTaggedSentence(*tagged, options);
    for (size_t m = 0; m < matches.size(); ++m) {
      matches[m].id = options.id_prefix + "-" + std::to_string(line_no + 1) +
                      "-" + std::to_string(m);
      result.records.push_back(std::move(matches[m]));
    }
  }
  return result;
}

}  // namespace simprobe::mining
