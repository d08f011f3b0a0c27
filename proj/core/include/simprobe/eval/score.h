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

#ifndef SIMPROBE_EVAL_SCORE_H_
#define SIMPROBE_EVAL_SCORE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "simprobe/distractors/probe_item.h"
#include "simprobe/eval/report.h"
#include "simprobe/lm/masked_lm.h"

namespace simprobe::eval {

struct OptionScores {
  int chosen = 0;
  std::vector<double> scores;
};

// Index of the largest score; ties go to the lowest index.
int ArgmaxLowestIndex(const std::vector<double> &scores);

// Scores each option by its log-probability at the mask. An option that the
// model splits into k subtokens is scored by the mean log-probability of its
// subtokens with k masks in place. Options containing the unknown id raise
// kInvalidArgument naming the option.
OptionScores ScoreOptions(const distractors::ProbeItem &item, const lm::MaskedLanguageModel &model);

using ModelForSeed = std::function<const lm::MaskedLanguageModel &(uint64_t seed)>;

// Accuracy of `model_for_seed(seed)` for each seed. When consecutive seeds
// resolve to the same model object the predictions are reused.
ExperimentReport Evaluate(const std::vector<distractors::ProbeItem> &items,
                          const ModelForSeed &model_for_seed, const std::string &model_name,
                          Setting setting, const std::vector<uint64_t> &seeds = kDefaultSeeds);

// One model for every seed.
ExperimentReport Evaluate(const std::vector<distractors::ProbeItem> &items,
                          const lm::MaskedLanguageModel &model, Setting setting = Setting::kZeroShot,
                          const std::vector<uint64_t> &seeds = kDefaultSeeds);

}  // namespace simprobe::eval

#endif  // SIMPROBE_EVAL_SCORE_H_
