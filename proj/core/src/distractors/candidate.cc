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

#include "simprobe/distractors/candidate.h"

#include "simprobe/common/error.h"
#include "simprobe/common/text.h"

namespace simprobe::distractors {

std::string_view OriginName(Origin origin) {
  switch (origin) {
    case Origin::kPropertyAntonym: return "property_antonym";
    case Origin::kTopicProperty: return "topic_property";
    case Origin::kVehicleProperty: return "vehicle_property";
    case Origin::kEventProperty: return "event_property";
    case Origin::kCorpusCooccurrence: return "corpus_cooccurrence";
  }
  return "unknown";
}

Origin ParseOrigin(std::string_view name) {
  for (Origin o : {Origin::kPropertyAntonym, Origin::kTopicProperty, Origin::kVehicleProperty,
                   Origin::kEventProperty, Origin::kCorpusCooccurrence}) {
    if (OriginName(o) == name) return o;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown distractor origin \"" + std::string(name) + "\"");
}

int OriginPriority(Origin origin) {
  switch (origin) {
    case Origin::kPropertyAntonym: return 0;
    case Origin::kTopicProperty:
    case Origin::kVehicleProperty:
    case Origin::kEventProperty: return 1;
    case Origin::kCorpusCooccurrence: return 2;
  }
  return 3;
}

std::string_view HumanLabelName(HumanLabel label) {
  switch (label) {
    case HumanLabel::kUnreviewed: return "unreviewed";
    case HumanLabel::kTrueNegative: return "true_negative";
    case HumanLabel::kRejected: return "rejected";
  }
  return "unreviewed";
}

HumanLabel ParseHumanLabel(std::string_view name) {
  for (HumanLabel l : {HumanLabel::kUnreviewed, HumanLabel::kTrueNegative, HumanLabel::kRejected}) {
    if (HumanLabelName(l) == name) return l;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown human label \"" + std::string(name) + "\"");
}

std::vector<std::string> Validate(const DistractorCandidate &c, std::string_view gold) {
  std::vector<std::string> issues;
  if (Trim(c.word).empty()) issues.push_back("empty word");
  if (EqualsIgnoreCase(c.word, gold)) issues.push_back("word equals the gold property");
  if (c.origin == Origin::kCorpusCooccurrence && (!c.frequency || *c.frequency <= 1)) {
    issues.push_back("co-occurrence candidate without frequency > 1");
  }
  if (c.frequency && *c.frequency < 0) issues.push_back("negative frequency");
  if (c.similarity && (*c.similarity < -1.0 - 1e-9 || *c.similarity > 1.0 + 1e-9)) {
    issues.push_back("similarity outside [-1, 1]");
  }
  return issues;
}

void to_json(nlohmann::json &j, const DistractorCandidate &c) {
  j = {{"word", c.word},
       {"origin", OriginName(c.origin)},
       {"human_label", HumanLabelName(c.human_label)}};
  j["frequency"] = c.frequency ? nlohmann::json(*c.frequency) : nlohmann::json(nullptr);
  j["similarity"] = c.similarity ? nlohmann::json(*c.similarity) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json &j, DistractorCandidate &c) {
  c.word = j.at("word").get<std::string>();
  c.origin = ParseOrigin(j.at("origin").get<std::string>());
  c.human_label = ParseHumanLabel(j.value("human_label", std::string("unreviewed")));
  c.frequency.reset();
  c.similarity.reset();
  if (j.contains("frequency") && !j["frequency"].is_null()) c.frequency = j["frequency"].get<long>();
  if (j.contains("similarity") && !j["similarity"].is_null()) {
    c.similarity = j["similarity"].get<double>();
  }
}

}  // namespace simprobe::distractors
