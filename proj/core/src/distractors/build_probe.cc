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

#include "simprobe/distractors/build_probe.h"

#include "simprobe/common/error.h"
#include "simprobe/common/random.h"
#include "simprobe/common/text.h"

namespace simprobe::distractors {

std::array<int, kNumOptions> NthPermutation(int index) {
  Require(index >= 0 && index < 24, ErrorCode::kOutOfRange,
          "permutation index " + std::to_string(index) + " outside [0, 24)");
  std::vector<int> pool = {0, 1, 2, 3};
  std::array<int, kNumOptions> out{};
  int factorial = 6;
  for (int i = 0; i < kNumOptions; ++i) {
    const int pick = index / factorial;
    index %= factorial;
    out[static_cast<size_t>(i)] = pool[static_cast<size_t>(pick)];
    pool.erase(pool.begin() + pick);
    if (i < kNumOptions - 1) factorial /= (kNumOptions - 1 - i);
  }
  return out;
}

int PermutationIndex(uint64_t seed, const std::string &record_id) {
  return static_cast<int>((seed % 24 + Fnv1a64(record_id) % 24) % 24);
}

ProbeItem BuildProbe(const mining::SimileRecord &record,
                     const std::vector<DistractorCandidate> &distractors, uint64_t seed,
                     const std::string &dataset) {
  Require(record.property.size() == 1, ErrorCode::kPrecondition,
          "record " + record.id + " property must be a single token");
  Require(distractors.size() == kNumDistractors, ErrorCode::kPrecondition,
          "record " + record.id + " needs exactly 3 distractors");
  const std::string gold = record.PropertyText();
  for (const DistractorCandidate &d : distractors) {
    const auto issues = Validate(d, gold);
    Require(issues.empty(), ErrorCode::kPrecondition,
            "record " + record.id + ": " + (issues.empty() ? "" : issues.front()));
  }

  ProbeItem item;
  item.record_id = record.id;
  item.dataset = dataset;
  item.category = record.category;
  item.masked_tokens = record.tokens;
  item.masked_tokens[static_cast<size_t>(record.property.begin)] = std::string(kMaskToken);
  item.spans = {record.topic, record.vehicle, record.event, record.comparators};

  // Slot 0 is the gold word, slots 1..3 the distractors.
  const auto order = NthPermutation(PermutationIndex(seed, record.id));
  for (int i = 0; i < kNumOptions; ++i) {
    const int slot = order[static_cast<size_t>(i)];
    if (slot == 0) {
      item.answer_index = i;
      item.options.push_back(gold);
    } else {
      const DistractorCandidate &d = distractors[static_cast<size_t>(slot - 1)];
      item.options.push_back(d.word);
      item.origins.push_back(std::string(OriginName(d.origin)));
    }
  }
  const auto issues = Validate(item);
  Require(issues.empty(), ErrorCode::kPrecondition,
          "record " + record.id + ": " + (issues.empty() ? "" : issues.front()));
  return item;
}

}  // namespace simprobe::distractors
