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

#include "simprobe/mining/stats.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "simprobe/common/text.h"

namespace simprobe::mining {

DatasetStats ComputeStats(const std::vector<SimileRecord> &records) {
  DatasetStats stats;
  stats.sentences = static_cast<int>(records.size());
  if (records.empty()) return stats;

  std::set<std::string> topics, properties, vehicles, events;
  std::set<std::pair<std::string, std::string>> tv;
  std::set<std::tuple<std::string, std::string, std::string>> tpv;
  long total_length = 0;
  stats.min_length = static_cast<int>(records.front().tokens.size());
  int start = 0, middle = 0, end = 0;

  for (const SimileRecord &r : records) {
    const std::string t = ToLower(r.TopicText());
    const std::string p = ToLower(r.PropertyText());
    const std::string v = ToLower(r.VehicleText());
    const std::string e = ToLower(r.EventText());
    if (!t.empty()) topics.insert(t);
    if (!p.empty()) properties.insert(p);
    if (!v.empty()) vehicles.insert(v);
    if (!e.empty()) events.insert(e);
    tv.emplace(t, v);
    tpv.emplace(t, p, v);
    const int length = static_cast<int>(r.tokens.size());
    total_length += length;
    stats.min_length = std::min(stats.min_length, length);
    stats.max_length = std::max(stats.max_length, length);
    switch (r.position) {
      case Position::kStart: ++start; break;
      case Position::kMiddle: ++middle; break;
      case Position::kEnd: ++end; break;
    }
  }
  const double n = static_cast<double>(records.size());
  stats.unique_topics = static_cast<int>(topics.size());
  stats.unique_properties = static_cast<int>(properties.size());
  stats.unique_vehicles = static_cast<int>(vehicles.size());
  stats.unique_events = static_cast<int>(events.size());
  stats.unique_topic_vehicle = static_cast<int>(tv.size());
  stats.unique_topic_property_vehicle = static_cast<int>(tpv.size());
  stats.avg_length = static_cast<double>(total_length) / n;
  stats.at_start = start / n;
  stats.at_middle = middle / n;
  stats.at_end = end / n;
  return stats;
}

nlohmann::json StatsToJson(const DatasetStats &s) {
  return {
      {"sentences", s.sentences},
      {"unique_topics", s.unique_topics},
      {"unique_properties", s.unique_properties},
      {"unique_vehicles", s.unique_vehicles},
      {"unique_events", s.unique_events},
      {"unique_topic_vehicle", s.unique_topic_vehicle},
      {"unique_topic_property_vehicle", s.unique_topic_property_vehicle},
      {"min_length", s.min_length},
      {"avg_length", s.avg_length},
      {"max_length", s.max_length},
      {"at_start", s.at_start},
      {"at_middle", s.at_middle},
      {"at_end", s.at_end},
  };
}

std::string StatsToCsv(const DatasetStats &stats) {
  std::ostringstream out;
  out << "statistic,value\n";
  const nlohmann::json j = StatsToJson(stats);
  for (const auto &[key, value] : j.items()) {
    out << key << ',' << value.dump() << '\n';
  }
  return out.str();
}

}  // namespace simprobe::mining
