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

#include "simprobe/distractors/generate.h"

#include <string>
#include <unordered_map>

#include "simprobe/common/error.h"
#include "simprobe/common/text.h"

namespace simprobe::distractors {
namespace {

bool IsSingleWord(const std::string &word) {
  if (word.empty() || IsPunctuationToken(word)) return false;
  return TokenizeWords(word).size() == 1 && SplitWhitespace(word).size() == 1;
}

// Full component text first, then single tokens from the right.
std::vector<std::string> ComponentKeys(const mining::SimileRecord &record, TokenSpan span) {
  std::vector<std::string> keys;
  if (span.empty()) return keys;
  keys.push_back(ToLower(SpanText(record.tokens, span)));
  if (span.size() == 1) return keys;
  for (int i = span.end - 1; i >= span.begin; --i) {
    keys.push_back(ToLower(record.tokens[static_cast<size_t>(i)]));
  }
  return keys;
}

class Pool {
 public:
  explicit Pool(std::string gold) : gold_(ToLower(gold)) {}

  void Offer(std::string_view raw, Origin origin, std::optional<long> frequency = std::nullopt) {
    std::string word = ToLower(Trim(raw));
    if (!IsSingleWord(word) || word == gold_) return;
    auto it = index_.find(word);
    if (it != index_.end()) {
      DistractorCandidate &kept = out_[it->second];
      if (!kept.frequency && frequency) kept.frequency = frequency;
      return;
    }
    index_.emplace(word, out_.size());
    out_.push_back({word, origin, frequency, std::nullopt, HumanLabel::kUnreviewed});
  }

  std::vector<DistractorCandidate> Take() { return std::move(out_); }

 private:
  std::string gold_;
  std::unordered_map<std::string, size_t> index_;
  std::vector<DistractorCandidate> out_;
};

}  // namespace

std::vector<DistractorCandidate> GenerateCandidates(const mining::SimileRecord &record,
                                                    const RelationLookup &kb,
                                                    const RelationLookup &commonsense,
                                                    const CooccurrenceIndex &cooccurrence,
                                                    const GenerateOptions &options) {
  Require(!record.property.empty(), ErrorCode::kPrecondition,
          "record " + record.id + " has no property span");
  const std::string gold = record.PropertyText();
  Pool pool(gold);

  for (const std::string &w : kb.Antonyms(ToLower(gold))) pool.Offer(w, Origin::kPropertyAntonym);

  const std::pair<TokenSpan, Origin> components[] = {
      {record.topic, Origin::kTopicProperty},
      {record.vehicle, Origin::kVehicleProperty},
      {record.event, Origin::kEventProperty},
  };
  for (const auto &[span, origin] : components) {
    for (const RelationLookup *lookup : {&kb, &commonsense}) {
      for (const std::string &key : ComponentKeys(record, span)) {
        std::vector<std::string> tails = lookup->HasProperty(key);
        if (tails.empty()) continue;
        for (const std::string &w : tails) pool.Offer(w, origin);
        break;
      }
    }
  }
  for (const auto &[span, origin] : components) {
    for (const std::string &key : ComponentKeys(record, span)) {
      auto ranked = RankCooccurrence(key, cooccurrence, options.cooccurrence_limit,
                                     options.cooccurrence_min_frequency);
      if (ranked.empty()) continue;
      for (const auto &[w, count] : ranked) pool.Offer(w, Origin::kCorpusCooccurrence, count);
      break;
    }
  }
  return pool.Take();
}

std::vector<DistractorCandidate> FilterSingleToken(std::vector<DistractorCandidate> candidates,
                                                   const lm::MaskedLanguageModel &model) {
  std::vector<DistractorCandidate> kept;
  for (DistractorCandidate &c : candidates) {
    const std::vector<int> ids = model.WordIds(c.word);
    if (ids.size() == 1 && ids.front() != model.unk_id()) kept.push_back(std::move(c));
  }
  return kept;
}

}  // namespace simprobe::distractors
