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

#include "simprobe/eval/ablate.h"

#include "simprobe/common/error.h"
#include "simprobe/common/random.h"
#include "simprobe/common/text.h"
#include "simprobe/eval/score.h"

namespace simprobe::eval {
namespace {

void Hide(distractors::ProbeItem &item, TokenSpan span, const char *name) {
  Require(!span.empty(), ErrorCode::kPrecondition,
          "item " + item.record_id + " has no " + name + " span");
  for (int i = span.begin; i < span.end; ++i) {
    item.masked_tokens.at(static_cast<size_t>(i)) = std::string(kUnkToken);
  }
}

bool PluralHead(const distractors::ProbeItem &item, const mining::PosTagger &tagger) {
  const TokenSpan t = item.spans.topic;
  if (t.empty()) return false;
  const std::string head = ToLower(item.masked_tokens[static_cast<size_t>(t.end - 1)]);
  if (head == "they" || head == "we" || head == "you") return true;
  std::vector<std::string> words(item.masked_tokens.begin() + t.begin,
                                 item.masked_tokens.begin() + t.end);
  const auto tags = tagger.TagTokens(words);
  return !tags.empty() && tags.back().plural;
}

}  // namespace

distractors::ProbeItem Ablate(const distractors::ProbeItem &item, Component component,
                              uint64_t seed, const mining::PosTagger *tagger) {
  distractors::ProbeItem out = item;
  distractors::ProbeSpans &s = out.spans;
  switch (component) {
    case Component::kTopic:
      Hide(out, s.topic, "topic");
      break;
    case Component::kVehicle:
      Hide(out, s.vehicle, "vehicle");
      break;
    case Component::kComparator:
      Require(!s.comparators.empty(), ErrorCode::kPrecondition,
              "item " + item.record_id + " has no comparator span");
      for (const TokenSpan &c : s.comparators) Hide(out, c, "comparator");
      break;
    case Component::kEvent: {
      Require(!s.event.empty(), ErrorCode::kPrecondition,
              "item " + item.record_id + " has no event span");
      static const mining::LexiconTagger kDefaultTagger;
      const bool plural = PluralHead(item, tagger ? *tagger : kDefaultTagger);
      const TokenSpan old = s.event;
      out.masked_tokens.erase(out.masked_tokens.begin() + old.begin,
                              out.masked_tokens.begin() + old.end);
      out.masked_tokens.insert(out.masked_tokens.begin() + old.begin, plural ? "are" : "is");
      s.topic = ShiftSpan(s.topic, old, 1);
      s.vehicle = ShiftSpan(s.vehicle, old, 1);
      s.event = ShiftSpan(s.event, old, 1);
      for (TokenSpan &c : s.comparators) c = ShiftSpan(c, old, 1);
      break;
    }
    case Component::kRandom: {
      std::vector<int> eligible;
      const int mask = item.mask_index();
      for (int i = 0; i < static_cast<int>(item.masked_tokens.size()); ++i) {
        bool in_component = i == mask || s.topic.contains(i) || s.vehicle.contains(i) ||
                            s.event.contains(i);
        for (const TokenSpan &c : s.comparators) in_component = in_component || c.contains(i);
        if (!in_component && !IsPunctuationToken(item.masked_tokens[static_cast<size_t>(i)])) {
          eligible.push_back(i);
        }
      }
      Require(!eligible.empty(), ErrorCode::kPrecondition,
              "item " + item.record_id + " has no token outside its components");
      Rng rng(MixSeed(seed, Fnv1a64(item.record_id)));
      const int pick = eligible[UniformIndex(rng, eligible.size())];
      out.masked_tokens[static_cast<size_t>(pick)] = std::string(kUnkToken);
      break;
    }
  }
  return out;
}

AblationResult EvaluateAblation(const std::vector<distractors::ProbeItem> &items,
                                Component component, const ModelForSeed &model_for_seed,
                                const std::string &model_name, const std::vector<uint64_t> &seeds,
                                const mining::PosTagger *tagger) {
  AblationResult result;
  result.ablated.model_name = model_name;
  result.ablated.setting = Setting::kAblated;
  result.ablated.component = component;
  for (const distractors::ProbeItem &item : items) {
    try {
      Ablate(item, component, 0, tagger);
      result.kept.push_back(item);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kPrecondition) throw;
      ++result.dropped;
    }
  }
  Require(!result.kept.empty(), ErrorCode::kPrecondition,
          "no item has a " + std::string(ComponentName(component)) + " component");
  // Random ablation draws a fresh token per seed; the others only depend on
  // the model.
  const lm::MaskedLanguageModel *previous = nullptr;
  for (uint64_t seed : seeds) {
    const lm::MaskedLanguageModel &model = model_for_seed(seed);
    SeedRun run;
    run.seed = seed;
    if (component != Component::kRandom && &model == previous) {
      run.predictions = result.ablated.runs.back().predictions;
    } else {
      for (const distractors::ProbeItem &item : result.kept) {
        const distractors::ProbeItem ablated = Ablate(item, component, seed, tagger);
        OptionScores s = ScoreOptions(ablated, model);
        run.predictions.push_back(MakePrediction(ablated, s.chosen, std::move(s.scores)));
      }
    }
    previous = &model;
    result.ablated.runs.push_back(std::move(run));
  }
  return result;
}

AblationResult EvaluateAblation(const std::vector<distractors::ProbeItem> &items,
                                Component component, const lm::MaskedLanguageModel &model,
                                const std::vector<uint64_t> &seeds,
                                const mining::PosTagger *tagger) {
  return EvaluateAblation(
      items, component, [&](uint64_t) -> const lm::MaskedLanguageModel & { return model; },
      model.name(), seeds, tagger);
}

}  // namespace simprobe::eval
