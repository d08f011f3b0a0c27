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

#ifndef SIMPROBE_TRAIN_FINETUNE_H_
#define SIMPROBE_TRAIN_FINETUNE_H_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "simprobe/lm/masked_lm.h"
#include "simprobe/mining/simile_record.h"
#include "simprobe/train/objective.h"

namespace simprobe::train {

struct StepLog {
  int epoch = 0;
  int step = 0;
  double mlm_loss = 0.0;
  double ke_loss = 0.0;  // 0 when no KE term was computed
  double total = 0.0;
};

struct FinetuneOptions {
  // Checkpoint directory, conventionally runs/<name>/<seed>/. Nothing is
  // written when empty.
  std::filesystem::path run_dir;
  std::function<void(const StepLog &)> on_step;
  // Stops after this many optimizer steps when positive.
  int max_steps = 0;
};

struct FinetuneResult {
  std::vector<StepLog> steps;
  std::vector<double> epoch_mean_loss;
  long dropped_records = 0;
  std::filesystem::path checkpoint;
};

// Header line of the training log.
inline constexpr std::string_view kTrainLogHeader = "step,epoch,mlm_loss,ke_loss,total";

// Fine-tunes `model` in place on the records with config.epochs passes over
// shuffled batches. Writes <run_dir>/checkpoint (model directory),
// <run_dir>/ke_head.safetensors, <run_dir>/train_config.json and
// <run_dir>/train_log.csv. A non-finite loss or gradient saves the current
// (last finite) parameters and raises kStageFailure.
FinetuneResult Finetune(const std::vector<mining::SimileRecord> &records,
                        lm::TransformerMaskedLM &model, const TrainConfig &config,
                        const FinetuneOptions &options = {});

}  // namespace simprobe::train

#endif  // SIMPROBE_TRAIN_FINETUNE_H_
