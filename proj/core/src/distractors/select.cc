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

#include "simprobe/distractors/select.h"

#include <algorithm>

#include "simprobe/common/error.h"
#include "simprobe/mining/position.h"

namespace simprobe::distractors {

lm::Vector LmFeatureEncoder::Feature(const std::vector<std::string> &tokens,
                                     TokenSpan property) const {
  const lm::Encoded encoded = lm::Encode(tokens, model_, layer_);
  const lm::Vector sentence = encoded.hidden.row(0).transpose();
  const lm::Vector span = lm::PoolSpan(encoded.encoding, encoded.hidden, property);
  lm::Vector feature(sentence.size() + span.size());
  feature << sentence, span;
  return feature;
}

double Cosine(const lm::Vector &a, const lm::Vector &b) {
  Require(a.size() == b.size(), ErrorCode::kInvalidArgument, "cosine of vectors of unequal size");
  const double norm = a.norm() * b.norm();
  return norm == 0.0 ? 0.0 : a.dot(b) / norm;
}

mining::SimileRecord SubstituteProperty(const mining::SimileRecord &record,
                                        const std::string &word) {
  Require(!record.property.empty(), ErrorCode::kPrecondition,
          "record " + record.id + " has no property span");
  mining::SimileRecord out = record;
  const TokenSpan old = record.property;
  out.tokens.erase(out.tokens.begin() + old.begin, out.tokens.begin() + old.end);
  out.tokens.insert(out.tokens.begin() + old.begin, word);
  out.property = {old.begin, old.begin + 1};
  out.topic = ShiftSpan(record.topic, old, 1);
  out.vehicle = ShiftSpan(record.vehicle, old, 1);
  out.event = ShiftSpan(record.event, old, 1);
  for (TokenSpan &c : out.comparators) c = ShiftSpan(c, old, 1);
  out.position = mining::ClassifyPosition(out);
  return out;
}

std::vector<DistractorCandidate> RankDistractors(const mining::SimileRecord &record,
                                                 std::vector<DistractorCandidate> candidates,
                                                 const SentenceFeatureEncoder &encoder) {
  const lm::Vector original = encoder.Feature(record.tokens, record.property);
  for (DistractorCandidate &c : candidates) {
    const mining::SimileRecord swapped = SubstituteProperty(record, c.word);
    c.similarity = Cosine(original, encoder.Feature(swapped.tokens, swapped.property));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const DistractorCandidate &a, const DistractorCandidate &b) {
                     return *a.similarity > *b.similarity;
                   });
  return candidates;
}

std::vector<DistractorCandidate> SelectDistractors(const mining::SimileRecord &record,
                                                   std::vector<DistractorCandidate> candidates,
                                                   const SentenceFeatureEncoder &encoder,
                                                   int count) {
  Require(static_cast<int>(candidates.size()) >= count, ErrorCode::kPrecondition,
          "record " + record.id + " has " + std::to_string(candidates.size()) +
              " distractor candidates, need " + std::to_string(count));
  std::vector<DistractorCandidate> ranked = RankDistractors(record, std::move(candidates), encoder);
  ranked.resize(static_cast<size_t>(count));
  return ranked;
}

}  // namespace simprobe::distractors
