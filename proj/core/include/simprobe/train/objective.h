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

#ifndef SIMPROBE_TRAIN_OBJECTIVE_H_
#define SIMPROBE_TRAIN_OBJECTIVE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/lm/masked_lm.h"
#include "simprobe/mining/simile_record.h"
#include "simprobe/train/ke.h"

namespace simprobe::train {

struct TrainConfig {
  double alpha = 5.0;
  int batch_size = 16;
  double learning_rate = 1e-5;
  int epochs = 10;
  int max_len = lm::kDefaultMaxLength;
  uint64_t seed = 0;
  KeVariant ke_variant = KeVariant::kTransE;
  double weight_decay = 0.01;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;

  // alpha must be positive unless the variant is none; alpha 0 is accepted
  // only with `allow_zero_alpha`.
  void Validate(bool allow_zero_alpha = false) const;
  static TrainConfig FromJson(const nlohmann::json &j);
  nlohmann::json ToJson() const;
};

// One training sentence in subtoken form. The property is replaced by the
// mask so E_p comes from the mask position.
struct TrainExample {
  std::string record_id;
  std::vector<int> ids;
  int mask_position = 0;
  int gold_id = 0;
  TokenSpan topic;    // subtoken range, may be empty
  TokenSpan vehicle;  // subtoken range, may be empty

  bool has_components() const { return !topic.empty() && !vehicle.empty(); }
};

// Raises kPrecondition when the property is not exactly one subtoken.
TrainExample PrepareExample(const mining::SimileRecord &record, const lm::MaskedLanguageModel &model);

// Examples whose property is one subtoken; the rest are counted in `dropped`.
std::vector<TrainExample> PrepareExamples(const std::vector<mining::SimileRecord> &records,
                                          const lm::MaskedLanguageModel &model, long *dropped);

// Mean cross-entropy of `gold[i]` under row i of `logits`.
lm::Var MlmLossFromLogits(const lm::Var &logits, const std::vector<int> &gold);

// alpha * ke + mlm, or exactly mlm for the none variant.
lm::Var CombineLosses(const lm::Var &mlm, const lm::Var &ke, double alpha, KeVariant variant);

struct LossTerms {
  lm::Var total;
  lm::Var mlm;
  lm::Var ke;  // undefined for the none variant or when no example has components
};

// MLM loss of the gold property at the mask, and the mean KE loss over the
// examples that have both topic and vehicle. Topic and vehicle are mean
// pooled over the last hidden layer; E_p is the last-layer state at the mask.
LossTerms JointLoss(const std::vector<const TrainExample *> &batch,
                    const lm::TransformerEncoder &encoder, const KeHead *ke_head,
                    const TrainConfig &config, const lm::ForwardOptions &forward = {});

// MLM-only loss over a batch.
lm::Var MlmPropertyLoss(const std::vector<const TrainExample *> &batch,
                        const lm::TransformerEncoder &encoder, const lm::ForwardOptions &forward = {});

}  // namespace simprobe::train

#endif  // SIMPROBE_TRAIN_OBJECTIVE_H_
