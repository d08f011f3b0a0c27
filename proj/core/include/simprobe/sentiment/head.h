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

#ifndef SIMPROBE_SENTIMENT_HEAD_H_
#define SIMPROBE_SENTIMENT_HEAD_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/lm/autograd.h"
#include "simprobe/lm/masked_lm.h"
#include "simprobe/lm/transformer.h"
#include "simprobe/sentiment/reviews.h"

namespace simprobe::sentiment {

// Linear(d, d) -> tanh -> Linear(d, 2).
class MlpHead {
 public:
  MlpHead(int dim, uint64_t seed);
  lm::Var Logits(const lm::Var &features) const;
  std::vector<int> Predict(const lm::Matrix &features) const;
  lm::ParameterStore &params() { return params_; }
  const lm::ParameterStore &params() const { return params_; }

 private:
  lm::ParameterStore params_;
};

struct HeadConfig {
  std::vector<double> learning_rates = {2e-5, 3e-5, 4e-5};
  int epochs = 200;
  int batch_size = 32;
  uint64_t seed = 0;
};

struct LabeledFeatures {
  lm::Matrix x;  // examples x dim
  std::vector<int> y;
};

struct HeadReport {
  double learning_rate = 0.0;
  int best_epoch = 0;  // 1-based
  double dev_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::map<double, double> dev_accuracy_by_lr;
};

double Accuracy(const std::vector<int> &predicted, const std::vector<int> &gold);

// Trains one head per learning rate, keeps each run's best dev epoch and
// reports test accuracy of the head with the best dev accuracy. Ties keep
// the earlier learning rate and epoch.
HeadReport TrainHead(const LabeledFeatures &train, const LabeledFeatures &dev,
                     const LabeledFeatures &test, const HeadConfig &config);

// Sequence-start hidden states of the last layer. Reviews are split into
// words and cut to fit the model's maximum length.
lm::Matrix ExtractFeatures(const std::vector<std::string> &texts, const lm::MaskedLanguageModel &model);

struct SentimentReport {
  std::string encoder_name;
  std::string checksum;
  HeadReport head;
};

nlohmann::json SentimentReportToJson(const SentimentReport &report);

// Extracts features once, trains the head and verifies that the encoder's
// parameter checksum did not change (kStageFailure otherwise).
SentimentReport RunSentimentProbe(const std::vector<ReviewExample> &dataset,
                                  const lm::MaskedLanguageModel &model, const HeadConfig &config);

}  // namespace simprobe::sentiment

#endif  // SIMPROBE_SENTIMENT_HEAD_H_
