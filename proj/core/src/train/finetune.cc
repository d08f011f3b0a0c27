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

#include "simprobe/train/finetune.h"

#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/random.h"
#include "simprobe/lm/safetensors.h"
#include "simprobe/train/adamw.h"

namespace simprobe::train {
namespace {

constexpr uint64_t kShuffleStream = 1;
constexpr uint64_t kDropoutStream = 2;
constexpr uint64_t kKeInitStream = 3;

bool NoDecay(const std::string &name) {
  return name.find("bias") != std::string::npos || name.find("LayerNorm") != std::string::npos;
}

std::string LogCsv(const std::vector<StepLog> &steps) {
  std::ostringstream out;
  out.precision(10);
  out << kTrainLogHeader << '\n';
  for (const StepLog &s : steps) {
    out << s.step << ',' << s.epoch << ',' << s.mlm_loss << ',' << s.ke_loss << ',' << s.total
        << '\n';
  }
  return out.str();
}

void SaveRun(const FinetuneOptions &options, const lm::TransformerMaskedLM &model,
             const KeHead *ke_head, const TrainConfig &config, const FinetuneResult &result) {
  if (options.run_dir.empty()) return;
  std::filesystem::create_directories(options.run_dir);
  model.Save(options.run_dir / "checkpoint");
  if (ke_head && ke_head->params().size() > 0) {
    lm::TensorMap tensors;
    for (const std::string &name : ke_head->params().names()) {
      const lm::Matrix &m = ke_head->params().Get(name).value();
      tensors[name] = {{m.rows(), m.cols()}, std::vector<double>(m.data(), m.data() + m.size())};
    }
    lm::WriteSafetensors(options.run_dir / "ke_head.safetensors", tensors);
  }
  WriteFileAtomic(options.run_dir / "train_config.json", config.ToJson().dump(2) + "\n");
  WriteFileAtomic(options.run_dir / "train_log.csv", LogCsv(result.steps));
}

}  // namespace

FinetuneResult Finetune(const std::vector<mining::SimileRecord> &records,
                        lm::TransformerMaskedLM &model, const TrainConfig &config,
                        const FinetuneOptions &options) {
  config.Validate();
  FinetuneResult result;
  const std::vector<TrainExample> examples = PrepareExamples(records, model, &result.dropped_records);
  Require(!examples.empty(), ErrorCode::kPrecondition, "no trainable records");

  lm::TransformerEncoder &encoder = model.encoder();
  std::unique_ptr<KeHead> ke_head;
  if (config.ke_variant != KeVariant::kNone) {
    ke_head = std::make_unique<KeHead>(config.ke_variant, encoder.config().hidden_size,
                                       MixSeed(config.seed, kKeInitStream));
  }
  std::vector<AdamW::Param> params;
  encoder.params().SetRequiresGrad(true);
  for (const std::string &name : encoder.params().names()) {
    params.push_back({encoder.params().Get(name), !NoDecay(name)});
  }
  if (ke_head) {
    ke_head->params().SetRequiresGrad(true);
    for (const lm::Var &v : ke_head->params().vars()) params.push_back({v, true});
  }
  AdamW optimizer(std::move(params), config.learning_rate, config.adam_beta1, config.adam_beta2,
                  config.adam_epsilon, config.weight_decay);

  Rng shuffle_rng(MixSeed(config.seed, kShuffleStream));
  Rng dropout_rng(MixSeed(config.seed, kDropoutStream));
  const lm::ForwardOptions forward{true, &dropout_rng};
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);

  auto finish = [&] {
    encoder.params().SetRequiresGrad(false);
    encoder.params().ZeroGrad();
    SaveRun(options, model, ke_head.get(), config, result);
    if (!options.run_dir.empty()) result.checkpoint = options.run_dir / "checkpoint";
  };

  int step = 0;
  bool stop = false;
  for (int epoch = 0; epoch < config.epochs && !stop; ++epoch) {
    Shuffle(order, shuffle_rng);
    double epoch_sum = 0.0;
    int epoch_batches = 0;
    for (size_t start = 0; start < order.size() && !stop; start += static_cast<size_t>(config.batch_size)) {
      std::vector<const TrainExample *> batch;
      for (size_t i = start; i < std::min(order.size(), start + static_cast<size_t>(config.batch_size)); ++i) {
        batch.push_back(&examples[order[i]]);
      }
      optimizer.ZeroGrad();
      LossTerms terms = JointLoss(batch, encoder, ke_head.get(), config, forward);
      StepLog log{epoch, step, terms.mlm.item(), terms.ke.defined() ? terms.ke.item() : 0.0,
                  terms.total.item()};
      bool finite = std::isfinite(log.total);
      if (finite) {
        lm::Backward(terms.total);
        finite = optimizer.GradientsFinite();
      }
      if (!finite) {
        result.steps.push_back(log);
        finish();
        throw Error(ErrorCode::kStageFailure,
                    "training diverged at step " + std::to_string(step) +
                        (options.run_dir.empty()
                             ? std::string()
                             : "; last good parameters saved to " + result.checkpoint.string()));
      }
      optimizer.Step();
      result.steps.push_back(log);
      if (options.on_step) options.on_step(log);
      epoch_sum += log.total;
      ++epoch_batches;
      ++step;
      if (options.max_steps > 0 && step >= options.max_steps) stop = true;
    }
    result.epoch_mean_loss.push_back(epoch_sum / std::max(1, epoch_batches));
  }
  finish();
  return result;
}

}  // namespace simprobe::train
