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

#include "simprobe/eval/baselines.h"

#include <cmath>
#include <set>

#include "simprobe/common/error.h"
#include "simprobe/common/text.h"

namespace simprobe::eval {
namespace {

const std::set<std::string> &FunctionWords() {
  static const std::set<std::string> words = {
      "a",   "an",  "the", "this", "that", "these", "those", "my",   "your", "his", "her",
      "its", "our", "their", "is", "was",  "are",   "were",  "be",   "been", "am",  "being"};
  return words;
}

}  // namespace

WordVectors TableVectors(const lm::EmbeddingTable *table, const lm::MaskedLanguageModel *model) {
  return [table, model](std::string_view word) -> std::optional<lm::Vector> {
    try {
      return lm::StaticEmbedding(word, table, model);
    } catch (const Error &) {
      return std::nullopt;
    }
  };
}

std::optional<lm::Vector> SpanVector(const std::vector<std::string> &tokens, TokenSpan span,
                                     const WordVectors &vectors) {
  if (span.empty()) return std::nullopt;
  std::vector<std::string> words;
  for (int i = span.begin; i < span.end; ++i) {
    const std::string &w = tokens.at(static_cast<size_t>(i));
    if (!FunctionWords().count(ToLower(w)) && !IsPunctuationToken(w)) words.push_back(w);
  }
  if (words.empty()) words.assign(tokens.begin() + span.begin, tokens.begin() + span.end);
  std::optional<lm::Vector> sum;
  int n = 0;
  for (const std::string &w : words) {
    std::optional<lm::Vector> v = vectors(w);
    if (!v) continue;
    if (sum) {
      *sum += *v;
    } else {
      sum = std::move(v);
    }
    ++n;
  }
  if (sum) *sum /= n;
  return sum;
}

double CosineDistance(const lm::Vector &a, const lm::Vector &b) {
  const double norm = a.norm() * b.norm();
  return norm == 0.0 ? 1.0 : 1.0 - a.dot(b) / norm;
}

namespace {

std::optional<std::vector<lm::Vector>> OptionVectors(const distractors::ProbeItem &item,
                                                     const WordVectors &vectors) {
  std::vector<lm::Vector> out;
  for (const std::string &o : item.options) {
    std::optional<lm::Vector> v = vectors(o);
    if (!v) return std::nullopt;
    out.push_back(std::move(*v));
  }
  return out;
}

}  // namespace

std::optional<OptionScores> EmbChoice(const distractors::ProbeItem &item, const WordVectors &vectors) {
  std::optional<lm::Vector> composite = SpanVector(item.masked_tokens, item.spans.vehicle, vectors);
  if (!composite) return std::nullopt;
  if (auto event = SpanVector(item.masked_tokens, item.spans.event, vectors)) *composite += *event;
  auto options = OptionVectors(item, vectors);
  if (!options) return std::nullopt;
  OptionScores out;
  for (const lm::Vector &o : *options) out.scores.push_back(-CosineDistance(o, *composite));
  out.chosen = ArgmaxLowestIndex(out.scores);
  return out;
}

std::optional<OptionScores> ConScoreChoice(const distractors::ProbeItem &item,
                                           const WordVectors &vectors) {
  auto topic = SpanVector(item.masked_tokens, item.spans.topic, vectors);
  auto vehicle = SpanVector(item.masked_tokens, item.spans.vehicle, vectors);
  if (!topic || !vehicle) return std::nullopt;
  auto options = OptionVectors(item, vectors);
  if (!options) return std::nullopt;
  OptionScores out;
  for (const lm::Vector &o : *options) {
    const double dt = CosineDistance(o, *topic), dv = CosineDistance(o, *vehicle);
    out.scores.push_back(-(dt + dv + std::abs(dt - dv)));
  }
  out.chosen = ArgmaxLowestIndex(out.scores);
  return out;
}

ExperimentReport EvaluateBaseline(const std::vector<distractors::ProbeItem> &items, Baseline baseline,
                                  const WordVectors &vectors, const std::string &name) {
  ExperimentReport report;
  report.model_name = !name.empty() ? name : baseline == Baseline::kEmb ? "EMB" : "ConScore";
  report.setting = Setting::kBaseline;
  SeedRun run;
  for (const distractors::ProbeItem &item : items) {
    auto s = baseline == Baseline::kEmb ? EmbChoice(item, vectors) : ConScoreChoice(item, vectors);
    if (!s) {
      ++report.skipped;
      continue;
    }
    run.predictions.push_back(MakePrediction(item, s->chosen, std::move(s->scores)));
  }
  Require(!run.predictions.empty(), ErrorCode::kPrecondition,
          report.model_name + ": no item could be scored");
  report.runs.push_back(std::move(run));
  return report;
}

}  // namespace simprobe::eval
