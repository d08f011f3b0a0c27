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

#ifndef SIMPROBE_DISTRACTORS_GENERATE_H_
#define SIMPROBE_DISTRACTORS_GENERATE_H_

#include <vector>

#include "simprobe/distractors/candidate.h"
#include "simprobe/distractors/cooccurrence.h"
#include "simprobe/distractors/knowledge.h"
#include "simprobe/lm/masked_lm.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::distractors {

struct GenerateOptions {
  int cooccurrence_limit = 10;
  long cooccurrence_min_frequency = 2;
};

// Candidate pool for a record, in priority order:
//   1. antonyms of the gold property (kb),
//   2. HasProperty tails of topic, vehicle and event (kb, then commonsense),
//   3. corpus co-occurrence modifiers of topic, vehicle and event heads.
// Components are looked up by full lower-cased text, then token by token
// from the right; the first key with results is used. Candidates equal to the gold property, multi-word or punctuation
// are dropped; duplicates keep the first (highest-priority) origin.
std::vector<DistractorCandidate> GenerateCandidates(const mining::SimileRecord &record,
                                                    const RelationLookup &kb,
                                                    const RelationLookup &commonsense,
                                                    const CooccurrenceIndex &cooccurrence,
                                                    const GenerateOptions &options = {});

// Keeps candidates that the model encodes as one subtoken.
std::vector<DistractorCandidate> FilterSingleToken(std::vector<DistractorCandidate> candidates,
                                                   const lm::MaskedLanguageModel &model);

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_GENERATE_H_
