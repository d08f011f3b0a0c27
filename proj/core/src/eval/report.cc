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

#include "simprobe/eval/report.h"

#include <cmath>
#include <sstream>

#include "simprobe/common/error.h"

namespace simprobe::eval {

std::string_view SettingName(Setting setting) {
  switch (setting) {
    case Setting::kZeroShot: return "zero_shot";
    case Setting::kMlmFinetuned: return "mlm_finetuned";
    case Setting::kKeFinetuned: return "ke_finetuned";
    case Setting::kAblated: return "ablated";
    case Setting::kBaseline: return "baseline";
    case Setting::kHuman: return "human";
  }
  return "unknown";
}

Setting ParseSetting(std::string_view name) {
  for (Setting s : {Setting::kZeroShot, Setting::kMlmFinetuned, Setting::kKeFinetuned,
                    Setting::kAblated, Setting::kBaseline, Setting::kHuman}) {
    if (SettingName(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown setting \"" + std::string(name) + "\"");
}

std::string_view ComponentName(Component component) {
  switch (component) {
    case Component::kTopic: return "topic";
    case Component::kVehicle: return "vehicle";
    case Component::kEvent: return "event";
    case Component::kComparator: return "comparator";
    case Component::kRandom: return "random";
  }
  return "unknown";
}

Component ParseComponent(std::string_view name) {
  for (Component c : {Component::kTopic, Component::kVehicle, Component::kEvent,
                      Component::kComparator, Component::kRandom}) {
    if (ComponentName(c) == name) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown component \"" + std::string(name) + "\"");
}

double Tally::accuracy() const {
  Require(total > 0, ErrorCode::kPrecondition, "accuracy of an empty tally");
  return static_cast<double>(correct) / static_cast<double>(total);
}

Prediction MakePrediction(const distractors::ProbeItem &item, int chosen,
                          std::vector<double> scores) {
  return {item.record_id, item.dataset, item.category, chosen, item.answer_index,
          std::move(scores)};
}

Tally SeedRun::overall() const {
  Tally t;
  for (const Prediction &p : predictions) t.Add(p.correct());
  return t;
}

std::map<std::string, Tally> SeedRun::by_dataset() const {
  std::map<std::string, Tally> out;
  for (const Prediction &p : predictions) out[p.dataset].Add(p.correct());
  return out;
}

std::map<std::string, Tally> SeedRun::by_category() const {
  std::map<std::string, Tally> out;
  for (const Prediction &p : predictions) {
    if (p.category) out[std::string(mining::CategoryName(*p.category))].Add(p.correct());
  }
  return out;
}

std::map<uint64_t, double> ExperimentReport::per_seed() const {
  std::map<uint64_t, double> out;
  for (const SeedRun &run : runs) out[run.seed] = run.overall().accuracy();
  return out;
}

namespace {

std::map<std::string, double> MeanOver(
    const std::vector<SeedRun> &runs,
    std::map<std::string, Tally> (SeedRun::*slice)() const) {
  std::map<std::string, double> sum;
  std::map<std::string, int> n;
  for (const SeedRun &run : runs) {
    for (const auto &[key, tally] : (run.*slice)()) {
      sum[key] += tally.accuracy();
      ++n[key];
    }
  }
  for (auto &[key, value] : sum) value /= n[key];
  return sum;
}

}  // namespace

std::map<std::string, double> ExperimentReport::per_dataset_accuracy() const {
  return MeanOver(runs, &SeedRun::by_dataset);
}

std::map<std::string, double> ExperimentReport::per_category_accuracy() const {
  return MeanOver(runs, &SeedRun::by_category);
}

double ExperimentReport::mean_accuracy() const {
  Require(!runs.empty(), ErrorCode::kPrecondition, "report has no runs");
  double sum = 0.0;
  for (const auto &[seed, acc] : per_seed()) sum += acc;
  return sum / static_cast<double>(runs.size());
}

double ExperimentReport::stddev_accuracy() const {
  if (runs.size() < 2) return 0.0;
  const double mean = mean_accuracy();
  double ss = 0.0;
  for (const auto &[seed, acc] : per_seed()) ss += (acc - mean) * (acc - mean);
  return std::sqrt(ss / static_cast<double>(runs.size() - 1));
}

std::string ExperimentReport::setting_label() const {
  std::string label(SettingName(setting));
  if (component) label += ":" + std::string(ComponentName(*component));
  return label;
}

nlohmann::json ReportToJson(const ExperimentReport &report, bool with_predictions) {
  nlohmann::json runs = nlohmann::json::array();
  for (const SeedRun &run : report.runs) {
    nlohmann::json r = {{"seed", run.seed}, {"accuracy", run.overall().accuracy()}};
    if (with_predictions) {
      nlohmann::json preds = nlohmann::json::array();
      for (const Prediction &p : run.predictions) {
        nlohmann::json row = {{"record_id", p.record_id}, {"dataset", p.dataset},
                              {"chosen", p.chosen},       {"answer", p.answer},
                              {"scores", p.scores}};
        if (p.category) row["category"] = mining::CategoryName(*p.category);
        preds.push_back(std::move(row));
      }
      r["predictions"] = std::move(preds);
    }
    runs.push_back(std::move(r));
  }
  nlohmann::json j = {
      {"model_name", report.model_name},
      {"setting", SettingName(report.setting)},
      {"mean_accuracy", report.mean_accuracy()},
      {"stddev_accuracy", report.stddev_accuracy()},
      {"per_dataset_accuracy", report.per_dataset_accuracy()},
      {"per_category_accuracy", report.per_category_accuracy()},
      {"skipped", report.skipped},
      {"runs", std::move(runs)},
  };
  nlohmann::json per_seed = nlohmann::json::object();
  for (const auto &[seed, acc] : report.per_seed()) per_seed[std::to_string(seed)] = acc;
  j["per_seed"] = std::move(per_seed);
  if (report.component) j["component"] = ComponentName(*report.component);
  return j;
}

ExperimentReport ReportFromJson(const nlohmann::json &j) {
  ExperimentReport report;
  report.model_name = j.at("model_name").get<std::string>();
  report.setting = ParseSetting(j.at("setting").get<std::string>());
  if (j.contains("component")) report.component = ParseComponent(j["component"].get<std::string>());
  report.skipped = j.value("skipped", 0L);
  for (const auto &r : j.at("runs")) {
    SeedRun run;
    run.seed = r.at("seed").get<uint64_t>();
    Require(r.contains("predictions"), ErrorCode::kDataLoss,
            "report was saved without predictions");
    for (const auto &p : r["predictions"]) {
      Prediction pred;
      pred.record_id = p.at("record_id").get<std::string>();
      pred.dataset = p.value("dataset", "");
      if (p.contains("category")) pred.category = mining::ParseCategory(p["category"].get<std::string>());
      pred.chosen = p.at("chosen").get<int>();
      pred.answer = p.at("answer").get<int>();
      pred.scores = p.value("scores", std::vector<double>{});
      run.predictions.push_back(std::move(pred));
    }
    report.runs.push_back(std::move(run));
  }
  return report;
}

std::string ReportToCsvRows(const ExperimentReport &report) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  const std::string prefix = report.model_name + "," + report.setting_label() + ",";
  auto row = [&](const std::string &dataset, const std::string &category, uint64_t seed,
                 const Tally &t) {
    out << prefix << dataset << ',' << category << ',' << seed << ',' << t.correct << ','
        << t.total << ',' << t.accuracy() << '\n';
  };
  for (const SeedRun &run : report.runs) {
    row("all", "all", run.seed, run.overall());
    for (const auto &[dataset, t] : run.by_dataset()) row(dataset.empty() ? "unnamed" : dataset, "all", run.seed, t);
    for (const auto &[category, t] : run.by_category()) row("all", category, run.seed, t);
  }
  return out.str();
}

std::string ReportsToCsv(const std::vector<ExperimentReport> &reports) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ExperimentReport &r : reports) out += ReportToCsvRows(r);
  return out;
}

}  // namespace simprobe::eval
