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

#ifndef SIMPROBE_EVAL_REPORT_H_
#define SIMPROBE_EVAL_REPORT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/distractors/probe_item.h"

namespace simprobe::eval {

enum class Setting { kZeroShot, kMlmFinetuned, kKeFinetuned, kAblated, kBaseline, kHuman };

enum class Component { kTopic, kVehicle, kEvent, kComparator, kRandom };

std::string_view SettingName(Setting setting);
Setting ParseSetting(std::string_view name);
std::string_view ComponentName(Component component);
Component ParseComponent(std::string_view name);

inline const std::vector<uint64_t> kDefaultSeeds = {0, 1, 2};

struct Tally {
  long correct = 0;
  long total = 0;
  // Raises kPrecondition when total is 0.
  double accuracy() const;
  void Add(bool is_correct) {
    ++total;
    if (is_correct) ++correct;
  }
};

struct Prediction {
  std::string record_id;
  std::string dataset;
  std::optional<mining::Category> category;
  int chosen = -1;
  int answer = -1;
  std::vector<double> scores;

  bool correct() const { return chosen == answer; }
};

Prediction MakePrediction(const distractors::ProbeItem &item, int chosen,
                          std::vector<double> scores = {});

struct SeedRun {
  uint64_t seed = 0;
  std::vector<Prediction> predictions;

  Tally overall() const;
  std::map<std::string, Tally> by_dataset() const;
  // Items without a category are left out.
  std::map<std::string, Tally> by_category() const;
};

struct ExperimentReport {
  std::string model_name;
  Setting setting = Setting::kZeroShot;
  std::optional<Component> component;
  std::vector<SeedRun> runs;
  // Items that could not be scored (baselines only).
  long skipped = 0;

  std::map<uint64_t, double> per_seed() const;
  // Means over seeds.
  std::map<std::string, double> per_dataset_accuracy() const;
  std::map<std::string, double> per_category_accuracy() const;
  // Mean of per_seed().
  double mean_accuracy() const;
  // Sample standard deviation of per_seed(); 0 with one seed.
  double stddev_accuracy() const;
  // "zero_shot", "ablated:vehicle", ...
  std::string setting_label() const;
};

nlohmann::json ReportToJson(const ExperimentReport &report, bool with_predictions = true);
ExperimentReport ReportFromJson(const nlohmann::json &j);

inline constexpr std::string_view kCsvHeader = "model,setting,dataset,category,seed,correct,total,accuracy";
// Flat rows of (model, setting, dataset, category, seed, counts, accuracy).
// "all" stands for the aggregate over a dimension.
std::string ReportToCsvRows(const ExperimentReport &report);
std::string ReportsToCsv(const std::vector<ExperimentReport> &reports);

}  // namespace simprobe::eval

#endif  // SIMPROBE_EVAL_REPORT_H_
