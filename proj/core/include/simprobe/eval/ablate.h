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

#ifndef SIMPROBE_EVAL_ABLATE_H_
#define SIMPROBE_EVAL_ABLATE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "simprobe/distractors/probe_item.h"
#include "simprobe/eval/report.h"
#include "simprobe/eval/score.h"
#include "simprobe/lm/masked_lm.h"
#include "simprobe/mining/pos.h"

namespace simprobe::eval {

// Hides one component of a probe sentence.
//   topic, vehicle, comparator: each token of the span(s) becomes [UNK].
//   event: the span becomes one copula, "are" for a plural topic head and
//          "is" otherwise. Plurality comes from `tagger` (a default lexicon
//          tagger when null).
//   random: one token outside every component span, the mask and
//           punctuation becomes [UNK], chosen by `seed`.
// A missing span, or no eligible token for random, raises kPrecondition.
distractors::ProbeItem Ablate(const distractors::ProbeItem &item, Component component,
                              uint64_t seed = 0, const mining::PosTagger *tagger = nullptr);

// Evaluates the ablated copies of `items` under the same seeds. Items that
// cannot be ablated are dropped from both the ablated and the returned
// paired baseline run so the two stay comparable.
struct AblationResult {
  ExperimentReport ablated;
  std::vector<distractors::ProbeItem> kept;  // unablated items that were scored
  long dropped = 0;
};

AblationResult EvaluateAblation(const std::vector<distractors::ProbeItem> &items,
                                Component component, const ModelForSeed &model_for_seed,
                                const std::string &model_name,
                                const std::vector<uint64_t> &seeds = kDefaultSeeds,
                                const mining::PosTagger *tagger = nullptr);
AblationResult EvaluateAblation(const std::vector<distractors::ProbeItem> &items,
                                Component component, const lm::MaskedLanguageModel &model,
                                const std::vector<uint64_t> &seeds = kDefaultSeeds,
                                const mining::PosTagger *tagger = nullptr);

}  // namespace simprobe::eval

#endif  // SIMPROBE_EVAL_ABLATE_H_
