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

#ifndef SIMPROBE_MINING_SIMILE_RECORD_H_
#define SIMPROBE_MINING_SIMILE_RECORD_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/common/token_span.h"

namespace simprobe::mining {

enum class Source { kGeneralCorpus, kQuizzes, kSupervision, kUser };

enum class Category {
  kQualities,
  kCondition,
  kSense,
  kMeasurement,
  kColor,
  kTime,
  kEmotion,
};

enum class Position { kStart, kMiddle, kEnd };

std::string_view SourceName(Source source);
Source ParseSource(std::string_view name);
std::string_view CategoryName(Category category);
Category ParseCategory(std::string_view name);
std::string_view PositionName(Position position);
Position ParsePosition(std::string_view name);

inline constexpr Category kAllCategories[] = {
    Category::kQualities,   Category::kCondition, Category::kSense,
    Category::kMeasurement, Category::kColor,     Category::kTime,
    Category::kEmotion,
};

// One closed simile. Spans index into `tokens`. The comparator is one span
// for "like" or two spans for the two "as" tokens.
struct SimileRecord {
  std::string id;
  std::vector<std::string> tokens;
  TokenSpan topic;
  TokenSpan property;
  TokenSpan vehicle;
  TokenSpan event;
  std::vector<TokenSpan> comparators;
  Source source = Source::kUser;
  std::optional<Category> category;
  Position position = Position::kMiddle;
  // Set when automatic component annotation could not find a subject.
  bool needs_review = false;

  std::string PropertyText() const { return SpanText(tokens, property); }
  std::string TopicText() const { return SpanText(tokens, topic); }
  std::string VehicleText() const { return SpanText(tokens, vehicle); }
  std::string EventText() const { return SpanText(tokens, event); }

  bool operator==(const SimileRecord &) const = default;
};

// Returns a list of invariant violations; empty means the record is valid.
// Checks bounds, pairwise disjointness, non-empty property and comparator,
// and that `position` agrees with ClassifyPosition.
std::vector<std::string> Validate(const SimileRecord &record);

void to_json(nlohmann::json &j, const SimileRecord &record);
void from_json(const nlohmann::json &j, SimileRecord &record);

}  // namespace simprobe::mining

#endif  // SIMPROBE_MINING_SIMILE_RECORD_H_
