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

#ifndef SIMPROBE_MINING_EXTRACT_H_
#define SIMPROBE_MINING_EXTRACT_H_

#include <string>
#include <vector>

#include "simprobe/mining/pos.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::mining {

enum class PatternMode {
  // as <ADJ> as (a|an|the) ... <NOUN>
  kClosedSimile,
  // <NOUN> ... as <ADJ> as ... <NOUN>, used for the supervision set.
  kSupervision,
};

struct ExtractOptions {
  PatternMode mode = PatternMode::kClosedSimile;
  // Tokens allowed between the determiner (or second "as") and the vehicle.
  int max_intervening = 3;
  Source source = Source::kGeneralCorpus;
  // Prefix for generated record ids: "<prefix>-<line>-<match>".
  std::string id_prefix = "s";
};

struct ExtractResult {
  std::vector<SimileRecord> records;
  int lines_read = 0;
  int lines_skipped = 0;
};

// Matches the comparison pattern on POS-tagged lines. Property, vehicle and
// comparator spans are filled; topic and event are left empty for
// AnnotateComponents. Untaggable lines are skipped and counted.
ExtractResult ExtractSimiles(const std::vector<std::string> &lines,
                             const PosTagger &tagger,
                             const ExtractOptions &options = {});

// Pattern matcher over one tagged sentence; exposed for testing.
std::vector<SimileRecord> MatchTaggedSentence(
    const std::vector<TaggedToken> &tagged, const ExtractOptions &options);

}  // namespace simprobe::mining

#endif  // SIMPROBE_MINING_EXTRACT_H_
