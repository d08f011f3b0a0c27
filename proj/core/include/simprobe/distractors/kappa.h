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

#ifndef SIMPROBE_DISTRACTORS_KAPPA_H_
#define SIMPROBE_DISTRACTORS_KAPPA_H_

#include <vector>

namespace simprobe::distractors {

// Fleiss' kappa over labels[annotator][item]. Labels are arbitrary integer
// categories. Returns 1 when every rating falls in one category.
// Fewer than 2 annotators or 2 items, or ragged rows, raise kInvalidArgument.
double FleissKappa(const std::vector<std::vector<int>> &labels);

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_KAPPA_H_
