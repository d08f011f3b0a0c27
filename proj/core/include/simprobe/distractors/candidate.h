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

#ifndef SIMPROBE_DISTRACTORS_CANDIDATE_H_
#define SIMPROBE_DISTRACTORS_CANDIDATE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace simprobe::distractors {

// Where a candidate came from, in descending merge priority.
enum class Origin {
  kPropertyAntonym,
  kTopicProperty,
  kVehicleProperty,
  kEventProperty,
  kCorpusCooccurrence,
};

enum class HumanLabel { kUnreviewed, kTrueNegative, kRejected };

std::string_view OriginName(Origin origin);
Origin ParseOrigin(std::string_view name);
// 0 for antonyms, 1 for component properties, 2 for co-occurrence.
int OriginPriority(Origin origin);

std::string_view HumanLabelName(HumanLabel label);
HumanLabel ParseHumanLabel(std::string_view name);

struct DistractorCandidate {
  std::string word;
  Origin origin = Origin::kCorpusCooccurrence;
  std::optional<long> frequency;
  std::optional<double> similarity;
  HumanLabel human_label = HumanLabel::kUnreviewed;

  bool operator==(const DistractorCandidate &) const = default;
};

// Invariant violations for a candidate against `gold`; empty when valid.
std::vector<std::string> Validate(const DistractorCandidate &candidate, std::string_view gold);

void to_json(nlohmann::json &j, const DistractorCandidate &candidate);
void from_json(const nlohmann::json &j, DistractorCandidate &candidate);

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_CANDIDATE_H_
