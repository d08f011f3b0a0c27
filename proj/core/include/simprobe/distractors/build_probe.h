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

#ifndef SIMPROBE_DISTRACTORS_BUILD_PROBE_H_
#define SIMPROBE_DISTRACTORS_BUILD_PROBE_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "simprobe/distractors/candidate.h"
#include "simprobe/distractors/probe_item.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::distractors {

// The `index`-th (0..23) permutation of {0, 1, 2, 3} in lexicographic order.
std::array<int, kNumOptions> NthPermutation(int index);

// Index of the option permutation used for `record_id` under `seed`. Seeds
// 0..23 cover all 24 orders for any fixed record.
int PermutationIndex(uint64_t seed, const std::string &record_id);

// Masks the (single-token) property and shuffles the gold word with the three
// distractors. Component spans are carried over into masked coordinates.
ProbeItem BuildProbe(const mining::SimileRecord &record,
                     const std::vector<DistractorCandidate> &distractors, uint64_t seed,
                     const std::string &dataset = "");

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_BUILD_PROBE_H_
