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

#ifndef SIMPROBE_PIPELINE_RUN_H_
#define SIMPROBE_PIPELINE_RUN_H_

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/distractors/confirm.h"
#include "simprobe/pipeline/config.h"

namespace simprobe::pipeline {

// Per-stage cache entries stored as manifest.json in the run directory.
// A stage is fresh when its key matches and every recorded output still
// hashes to the recorded digest.
class Manifest {
 public:
  explicit Manifest(std::filesystem::path run_dir);

  bool Fresh(const std::string &stage, const std::string &key) const;
  // Hashes `outputs` (paths relative to the run directory) and saves.
  void Record(const std::string &stage, const std::string &key,
              const std::vector<std::string> &outputs);
  std::optional<std::string> Key(const std::string &stage) const;
  const nlohmann::json &data() const { return data_; }

 private:
  void Save() const;

  std::filesystem::path run_dir_;
  nlohmann::json data_;
};

struct StageOutcome {
  Stage stage;
  bool cached = false;
  std::vector<std::string> outputs;
};

struct RunOptions {
  // Annotation source for the confirm stage; recorded judgments from the
  // config are used when null.
  distractors::AnnotationSession *session = nullptr;
  std::ostream *log = nullptr;
};

struct RunSummary {
  std::filesystem::path run_dir;
  std::vector<StageOutcome> stages;
};

// Stages to run: the configured list in pipeline order, or every stage whose
// inputs are configured. Raises kPrecondition naming a missing input key.
std::vector<Stage> PlannedStages(const ExperimentConfig &config);

// Runs the planned stages under output_dir/run_name, skipping stages whose
// inputs are unchanged. The run directory receives run.json with the full
// config, seeds and version. A failing stage raises kStageFailure and leaves
// earlier stages cached, so a rerun resumes there.
RunSummary RunPipeline(const ExperimentConfig &config, const RunOptions &options = {});

std::string VersionString();

}  // namespace simprobe::pipeline

#endif  // SIMPROBE_PIPELINE_RUN_H_
