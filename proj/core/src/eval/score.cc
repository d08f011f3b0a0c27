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

#include "simprobe/eval/score.h"

#include <cmath>
#include <map>

#include "simprobe/common/error.h"

namespace simprobe::eval {
namespace {

lm::Vector LogSoftmax(const lm::Matrix &logits, Eigen::Index row) {
  const lm::Vector r = logits.row(row).transpose();
  const double max = r.maxCoeff();
  const double lse = max + std::log((r.array() - max).exp().sum());
  return r.array() - lse;
}

}  // namespace

int ArgmaxLowestIndex(const std::vector<double> &scores) {
  Require(!scores.empty(), ErrorCode::kInvalidArgument, "no scores");
  int best = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[static_cast<size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

OptionScores ScoreOptions(const distractors::ProbeItem &item, const lm::MaskedLanguageModel &model) {
  const int mask = item.mask_index();
  Require(mask >= 0, ErrorCode::kPrecondition, "item " + item.record_id + " has no mask");
  std::vector<std::vector<int>> ids;
  for (const std::string &option : item.options) {
    std::vector<int> word_ids = model.WordIds(option);
    bool unknown = word_ids.empty();
    for (int id : word_ids) unknown = unknown || id == model.unk_id();
    Require(!unknown, ErrorCode::kInvalidArgument,
            "option \"" + option + "\" of item " + item.record_id + " is unknown to " + model.name());
    ids.push_back(std::move(word_ids));
  }

  OptionScores out;
  out.scores.assign(item.options.size(), 0.0);
  std::map<int, lm::Matrix> by_width;  // log-probabilities for each mask width
  for (size_t i = 0; i < ids.size(); ++i) {
    const int width = static_cast<int>(ids[i].size());
    auto it = by_width.find(width);
    if (it == by_width.end()) {
      const lm::AlignedEncoding enc = model.Align(item.masked_tokens, width);
      const lm::Matrix logits = model.Logits(enc, enc.mask_positions);
      lm::Matrix logprobs(logits.rows(), logits.cols());
      for (Eigen::Index r = 0; r < logits.rows(); ++r) logprobs.row(r) = LogSoftmax(logits, r).transpose();
      it = by_width.emplace(width, std::move(logprobs)).first;
    }
    double sum = 0.0;
    for (int k = 0; k < width; ++k) sum += it->second(k, ids[i][static_cast<size_t>(k)]);
    out.scores[i] = sum / width;
  }
  out.chosen = ArgmaxLowestIndex(out.scores);
  return out;
}

ExperimentReport Evaluate(const std::vector<distractors::ProbeItem> &items,
                          const ModelForSeed &model_for_seed, const std::string &model_name,
                          Setting setting, const std::vector<uint64_t> &seeds) {
  Require(!items.empty(), ErrorCode::kPrecondition, "no items to evaluate");
  Require(!seeds.empty(), ErrorCode::kPrecondition, "no seeds to evaluate");
  ExperimentReport report;
  report.model_name = model_name;
  report.setting = setting;
  const lm::MaskedLanguageModel *previous = nullptr;
  for (uint64_t seed : seeds) {
    const lm::MaskedLanguageModel &model = model_for_seed(seed);
    SeedRun run;
    run.seed = seed;
    if (&model == previous) {
      run.predictions = report.runs.back().predictions;
    } else {
      run.predictions.reserve(items.size());
      for (const distractors::ProbeItem &item : items) {
        OptionScores s = ScoreOptions(item, model);
        run.predictions.push_back(MakePrediction(item, s.chosen, std::move(s.scores)));
      }
    }
    previous = &model;
    report.runs.push_back(std::move(run));
  }
  return report;
}

ExperimentReport Evaluate(const std::vector<distractors::ProbeItem> &items,
                          const lm::MaskedLanguageModel &model, Setting setting,
                          const std::vector<uint64_t> &seeds) {
  return Evaluate(
      items, [&](uint64_t) -> const lm::MaskedLanguageModel & { return model; }, model.name(),
      setting, seeds);
}

}  // namespace simprobe::eval
