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

#ifndef SIMPROBE_MINING_STATS_H_
#define SIMPROBE_MINING_STATS_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/mining/simile_record.h"

namespace simprobe::mining {

struct DatasetStats {
  int sentences = 0;
  int unique_topics = 0;
  int unique_properties = 0;
  int unique_vehicles = 0;
  int unique_events = 0;
  int unique_topic_vehicle = 0;
  int unique_topic_property_vehicle = 0;
  int min_length = 0;
  double avg_length = 0.0;
  int max_length = 0;
  // Fractions of records per position; sum to 1 for non-empty input.
  double at_start = 0.0;
  double at_middle = 0.0;
  double at_end = 0.0;
};

// Concepts are compared case-insensitively by span text. Empty spans do not
// count as concepts.
DatasetStats ComputeStats(const std::vector<SimileRecord> &records);

nlohmann::json StatsToJson(const DatasetStats &stats);
// Two-column table ("statistic,value") for reports.
std::string StatsToCsv(const DatasetStats &stats);

}  // namespace simprobe::mining

#endif  // SIMPROBE_MINING_STATS_H_
