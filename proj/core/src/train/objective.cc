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

#include "simprobe/train/objective.h"

#include "simprobe/common/error.h"
#include "simprobe/common/text.h"

namespace simprobe::train {

using lm::Var;

void TrainConfig::Validate(bool allow_zero_alpha) const {
  if (ke_variant != KeVariant::kNone) {
    Require(alpha > 0.0 || (allow_zero_alpha && alpha == 0.0), ErrorCode::kInvalidArgument,
            "alpha must be positive when a KE variant is used");
  }
  Require(batch_size >= 1, ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  Require(learning_rate > 0.0, ErrorCode::kInvalidArgument, "learning_rate must be positive");
  Require(epochs >= 1, ErrorCode::kInvalidArgument, "epochs must be >= 1");
  Require(max_len >= 4, ErrorCode::kInvalidArgument, "max_len must be >= 4");
  Require(weight_decay >= 0.0, ErrorCode::kInvalidArgument, "weight_decay must be >= 0");
  Require(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0,
          ErrorCode::kInvalidArgument, "Adam betas must lie in [0, 1)");
}

TrainConfig TrainConfig::FromJson(const nlohmann::json &j) {
  TrainConfig c;
  c.alpha = j.value("alpha", c.alpha);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.epochs = j.value("epochs", c.epochs);
  c.max_len = j.value("max_len", c.max_len);
  c.seed = j.value("seed", c.seed);
  c.ke_variant = ParseKeVariant(j.value("ke_variant", std::string(KeVariantName(c.ke_variant))));
  c.weight_decay = j.value("weight_decay", c.weight_decay);
  c.adam_beta1 = j.value("adam_beta1", c.adam_beta1);
  c.adam_beta2 = j.value("adam_beta2", c.adam_beta2);
  c.adam_epsilon = j.value("adam_epsilon", c.adam_epsilon);
  return c;
}

nlohmann::json TrainConfig::ToJson() const {
  return {{"alpha", alpha},
          {"batch_size", batch_size},
          {"learning_rate", learning_rate},
          {"epochs", epochs},
          {"max_len", max_len},
          {"seed", seed},
          {"ke_variant", KeVariantName(ke_variant)},
          {"weight_decay", weight_decay},
          {"adam_beta1", adam_beta1},
          {"adam_beta2", adam_beta2},
          {"adam_epsilon", adam_epsilon}};
}

TrainExample PrepareExample(const mining::SimileRecord &record, const lm::MaskedLanguageModel &model) {
  Require(record.property.size() == 1, ErrorCode::kPrecondition,
          "record " + record.id + " property spans " + std::to_string(record.property.size()) +
              " tokens");
  const std::vector<int> gold = model.WordIds(record.PropertyText());
  Require(gold.size() == 1 && gold[0] != model.unk_id(), ErrorCode::kPrecondition,
          "record " + record.id + " property \"" + record.PropertyText() + "\" is not one subtoken");
  std::vector<std::string> masked = record.tokens;
  masked[static_cast<size_t>(record.property.begin)] = std::string(kMaskToken);
  const lm::AlignedEncoding enc = model.Align(masked);
  TrainExample ex;
  ex.record_id = record.id;
  ex.ids = enc.subtoken_ids;
  ex.mask_position = enc.mask_positions.at(0);
  ex.gold_id = gold[0];
  ex.topic = enc.SubtokenRange(record.topic);
  ex.vehicle = enc.SubtokenRange(record.vehicle);
  return ex;
}

std::vector<TrainExample> PrepareExamples(const std::vector<mining::SimileRecord> &records,
                                          const lm::MaskedLanguageModel &model, long *dropped) {
  std::vector<TrainExample> out;
  long skipped = 0;
  for (const mining::SimileRecord &r : records) {
    try {
      out.push_back(PrepareExample(r, model));
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kPrecondition) throw;
      ++skipped;
    }
  }
  if (dropped) *dropped = skipped;
  return out;
}

Var MlmLossFromLogits(const Var &logits, const std::vector<int> &gold) {
  Require(logits.rows() == static_cast<Eigen::Index>(gold.size()), ErrorCode::kInvalidArgument,
          "one gold id per logits row expected");
  return lm::CrossEntropy(logits, gold);
}

Var CombineLosses(const Var &mlm, const Var &ke, double alpha, KeVariant variant) {
  if (variant == KeVariant::kNone || !ke.defined()) return mlm;
  return Add(Scale(ke, alpha), mlm);
}

namespace {

Var Pool(const Var &hidden, TokenSpan span) {
  return lm::MeanRows(lm::SliceRows(hidden, span.begin, span.size()));
}

}  // namespace

LossTerms JointLoss(const std::vector<const TrainExample *> &batch,
                    const lm::TransformerEncoder &encoder, const KeHead *ke_head,
                    const TrainConfig &config, const lm::ForwardOptions &forward) {
  Require(!batch.empty(), ErrorCode::kPrecondition, "empty batch");
  const bool use_ke = config.ke_variant != KeVariant::kNone;
  Require(!use_ke || (ke_head && ke_head->variant() == config.ke_variant),
          ErrorCode::kPrecondition, "KE head missing or of the wrong variant");
  std::vector<Var> mask_rows;
  std::vector<int> gold;
  std::vector<Var> ke_terms;
  for (const TrainExample *ex : batch) {
    const Var hidden = encoder.Forward(ex->ids, forward).back();
    mask_rows.push_back(lm::SliceRows(hidden, ex->mask_position, 1));
    gold.push_back(ex->gold_id);
    if (use_ke && ex->has_components()) {
      ke_terms.push_back(ke_head->Loss(Pool(hidden, ex->topic), mask_rows.back(),
                                       Pool(hidden, ex->vehicle)));
    }
  }
  LossTerms out;
  out.mlm = MlmLossFromLogits(
      encoder.LmLogits(lm::ConcatRows(mask_rows), [&] {
        std::vector<int> rows(mask_rows.size());
        for (size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
        return rows;
      }()),
      gold);
  if (!ke_terms.empty()) {
    Var sum = ke_terms.front();
    for (size_t i = 1; i < ke_terms.size(); ++i) sum = Add(sum, ke_terms[i]);
    out.ke = Scale(sum, 1.0 / static_cast<double>(ke_terms.size()));
  }
  out.total = CombineLosses(out.mlm, out.ke, config.alpha, config.ke_variant);
  return out;
}

Var MlmPropertyLoss(const std::vector<const TrainExample *> &batch,
                    const lm::TransformerEncoder &encoder, const lm::ForwardOptions &forward) {
  TrainConfig config;
  config.ke_variant = KeVariant::kNone;
  return JointLoss(batch, encoder, nullptr, config, forward).mlm;
}

}  // namespace simprobe::train
