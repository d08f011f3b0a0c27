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

#ifndef SIMPROBE_EVAL_BASELINES_H_
#define SIMPROBE_EVAL_BASELINES_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simprobe/distractors/probe_item.h"
#include "simprobe/eval/report.h"
#include "simprobe/eval/score.h"
#include "simprobe/lm/masked_lm.h"

namespace simprobe::eval {

// Word vector source; nullopt when the word cannot be resolved.
using WordVectors = std::function<std::optional<lm::Vector>(std::string_view word)>;

// Static table first, then the model's input embeddings. Either may be null.
WordVectors TableVectors(const lm::EmbeddingTable *table, const lm::MaskedLanguageModel *model);

// Vector of a component span: the mean over its content words (determiners,
// possessives and forms of "be" are dropped unless nothing else remains).
// Words that do not resolve are skipped; nullopt when none resolve.
std::optional<lm::Vector> SpanVector(const std::vector<std::string> &tokens, TokenSpan span,
                                     const WordVectors &vectors);

// 1 - cosine similarity.
double CosineDistance(const lm::Vector &a, const lm::Vector &b);

// Composite = vehicle + event (event omitted when empty); picks the option
// closest to the composite. nullopt when the vehicle or an option cannot be
// resolved.
std::optional<OptionScores> EmbChoice(const distractors::ProbeItem &item, const WordVectors &vectors);

// Prefers options near both topic and vehicle and equally near to them:
//   score(o) = -(d(o,t) + d(o,v) + |d(o,t) - d(o,v)|), d the cosine distance.
// nullopt when topic, vehicle or an option cannot be resolved.
std::optional<OptionScores> ConScoreChoice(const distractors::ProbeItem &item,
                                           const WordVectors &vectors);

enum class Baseline { kEmb, kConScore };

// Single-run report; unresolvable items are counted in `skipped` and left out
// of the accuracy.
ExperimentReport EvaluateBaseline(const std::vector<distractors::ProbeItem> &items, Baseline baseline,
                                  const WordVectors &vectors, const std::string &name = "");

}  // namespace simprobe::eval

#endif  // SIMPROBE_EVAL_BASELINES_H_
