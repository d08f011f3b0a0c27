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

#include "simprobe/mining/simile_record.h"

#include <array>
#include <utility>

#include "simprobe/common/error.h"
#include "simprobe/mining/position.h"

namespace simprobe::mining {
namespace {

constexpr std::array<std::pair<Source, std::string_view>, 4> kSources = {{
    {Source::kGeneralCorpus, "general_corpus"},
    {Source::kQuizzes, "quizzes"},
    {Source::kSupervision, "supervision"},
    {Source::kUser, "user"},
}};

constexpr std::array<std::pair<Category, std::string_view>, 7> kCategories = {{
    {Category::kQualities, "qualities"},
    {Category::kCondition, "condition"},
    {Category::kSense, "sense"},
    {Category::kMeasurement, "measurement"},
    {Category::kColor, "color"},
    {Category::kTime, "time"},
    {Category::kEmotion, "emotion"},
}};

constexpr std::array<std::pair<Position, std::string_view>, 3> kPositions = {{
    {Position::kStart, "start"},
    {Position::kMiddle, "middle"},
    {Position::kEnd, "end"},
}};

template <typename E, size_t N>
std::string_view NameOf(const std::array<std::pair<E, std::string_view>, N> &table,
                        E value) {
  for (const auto &[v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

template <typename E, size_t N>
E ParseName(const std::array<std::pair<E, std::string_view>, N> &table,
            std::string_view name, std::string_view what) {
  for (const auto &[v, n] : table) {
    if (n == name) return v;
  }
  Fail(ErrorCode::kInvalidArgument,
       "unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace

std::string_view SourceName(Source source) { return NameOf(kSources, source); }
Source ParseSource(std::string_view name) {
  return ParseName(kSources, name, "source");
}
std::string_view CategoryName(Category category) {
  return NameOf(kCategories, category);
}
Category ParseCategory(std::string_view name) {
  return ParseName(kCategories, name, "category");
}
std::string_view PositionName(Position position) {
  return NameOf(kPositions, position);
}
Position ParsePosition(std::string_view name) {
  return ParseName(kPositions, name, "position");
}

std::vector<std::string> Validate(const SimileRecord &record) {
  std::vector<std::string> issues;
  const int n = static_cast<int>(record.tokens.size());
  std::vector<std::pair<std::string, TokenSpan>> spans = {
      {"topic", record.topic},
      {"property", record.property},
      {"vehicle", record.vehicle},
      {"event", record.event},
  };
  for (size_t i = 0; i < record.comparators.size(); ++i) {
    spans.emplace_back("comparator" + std::to_string(i), record.comparators[i]);
  }
  for (const auto &[name, span] : spans) {
    if (span.begin < 0 || span.end > n || span.begin > span.end) {
      issues.push_back(name + " span out of bounds");
    }
  }
  for (size_t i = 0; i < spans.size(); ++i) {
    for (size_t j = i + 1; j < spans.size(); ++j) {
      if (spans[i].second.overlaps(spans[j].second)) {
        issues.push_back(spans[i].first + " overlaps " + spans[j].first);
      }
    }
  }
  if (record.property.empty()) issues.push_back("property span is empty");
  if (record.comparators.empty()) issues.push_back("no comparator span");
  for (const TokenSpan &c : record.comparators) {
    if (c.empty()) issues.push_back("empty comparator span");
  }
  if (issues.empty() && record.position != ClassifyPosition(record)) {
    issues.push_back("position disagrees with the thirds rule");
  }
  return issues;
}

void to_json(nlohmann::json &j, const SimileRecord &record) {
  nlohmann::json spans = {
      {"topic", record.topic},
      {"property", record.property},
      {"vehicle", record.vehicle},
      {"event", record.event},
      {"comparator", record.comparators},
  };
  j = nlohmann::json{
      {"id", record.id},
      {"tokens", record.tokens},
      {"spans", spans},
      {"source", SourceName(record.source)},
      {"category", record.category ? nlohmann::json(CategoryName(*record.category))
                                   : nlohmann::json(nullptr)},
      {"position", PositionName(record.position)},
  };
  if (record.needs_review) j["needs_review"] = true;
}

void from_json(const nlohmann::json &j, SimileRecord &record) {
  record = SimileRecord{};
  record.id = j.value("id", "");
  record.tokens = j.at("tokens").get<std::vector<std::string>>();
  const auto &spans = j.at("spans");
  record.topic = spans.value("topic", TokenSpan{});
  record.property = spans.at("property").get<TokenSpan>();
  record.vehicle = spans.value("vehicle", TokenSpan{});
  record.event = spans.value("event", TokenSpan{});
  record.comparators = spans.at("comparator").get<std::vector<TokenSpan>>();
  record.source = ParseSource(j.value("source", "user"));
  if (j.contains("category") && !j["category"].is_null()) {
    record.category = ParseCategory(j["category"].get<std::string>());
  }
  if (j.contains("position")) {
    record.position = ParsePosition(j["position"].get<std::string>());
  } else {
    record.position = ClassifyPosition(record);
  }
  record.needs_review = j.value("needs_review", false);
}

}  // namespace simprobe::mining
