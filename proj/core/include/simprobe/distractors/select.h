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

#ifndef SIMPROBE_DISTRACTORS_SELECT_H_
#define SIMPROBE_DISTRACTORS_SELECT_H_

#include <string>
#include <vector>

#include "simprobe/distractors/candidate.h"
#include "simprobe/lm/masked_lm.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::distractors {

// Feature vector of a sentence with a marked property position.
class SentenceFeatureEncoder {
 public:
  virtual ~SentenceFeatureEncoder() = default;
  virtual lm::Vector Feature(const std::vector<std::string> &tokens, TokenSpan property) const = 0;
};

// Concatenation of the sequence-start hidden state and the mean hidden state
// over the property subtokens, both from `layer`.
class LmFeatureEncoder : public SentenceFeatureEncoder {
 public:
  explicit LmFeatureEncoder(const lm::MaskedLanguageModel &model, int layer = -1)
      : model_(model), layer_(layer) {}
  lm::Vector Feature(const std::vector<std::string> &tokens, TokenSpan property) const override;

 private:
  const lm::MaskedLanguageModel &model_;
  int layer_;
};

// Cosine similarity; 0 when either vector is zero.
double Cosine(const lm::Vector &a, const lm::Vector &b);

// `record` with its property span replaced by the single token `word`.
mining::SimileRecord SubstituteProperty(const mining::SimileRecord &record,
                                        const std::string &word);

// All candidates with `similarity` set to the cosine between the original
// sentence feature and the substituted sentence feature, in descending
// similarity. Ties keep input order.
std::vector<DistractorCandidate> RankDistractors(const mining::SimileRecord &record,
                                                 std::vector<DistractorCandidate> candidates,
                                                 const SentenceFeatureEncoder &encoder);

// The `count` highest-ranked candidates. Fewer than `count` candidates raise
// kPrecondition.
std::vector<DistractorCandidate> SelectDistractors(const mining::SimileRecord &record,
                                                   std::vector<DistractorCandidate> candidates,
                                                   const SentenceFeatureEncoder &encoder,
                                                   int count = 3);

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_SELECT_H_
