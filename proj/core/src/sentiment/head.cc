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

#include "simprobe/sentiment/head.h"

#include <numeric>
#include <sstream>

#include "simprobe/common/error.h"
#include "simprobe/common/random.h"
#include "simprobe/common/text.h"
#include "simprobe/train/adamw.h"

namespace simprobe::sentiment {

using lm::Matrix;
using lm::Var;

MlpHead::MlpHead(int dim, uint64_t seed) {
  Require(dim > 0, ErrorCode::kInvalidArgument, "head dimension must be positive");
  Rng rng(seed);
  auto normal = [&](int rows, int cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = 0.02 * StandardNormal(rng);
    return m;
  };
  params_.Add("dense.weight", normal(dim, dim));
  params_.Add("dense.bias", Matrix::Zero(1, dim));
  params_.Add("out_proj.weight", normal(2, dim));
  params_.Add("out_proj.bias", Matrix::Zero(1, 2));
}

Var MlpHead::Logits(const Var &features) const {
  const Var h = lm::Tanh(lm::Linear(features, params_.Get("dense.weight"), params_.Get("dense.bias")));
  return lm::Linear(h, params_.Get("out_proj.weight"), params_.Get("out_proj.bias"));
}

std::vector<int> MlpHead::Predict(const Matrix &features) const {
  lm::NoGradGuard no_grad;
  const Matrix logits = Logits(Var(features)).value();
  std::vector<int> out(static_cast<size_t>(logits.rows()));
  for (Eigen::Index r = 0; r < logits.rows(); ++r) out[static_cast<size_t>(r)] = logits(r, 1) > logits(r, 0) ? 1 : 0;
  return out;
}

double Accuracy(const std::vector<int> &predicted, const std::vector<int> &gold) {
  Require(!gold.empty() && predicted.size() == gold.size(), ErrorCode::kInvalidArgument,
          "accuracy needs equally sized, non-empty label lists");
  size_t correct = 0;
  for (size_t i = 0; i < gold.size(); ++i) correct += predicted[i] == gold[i];
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

namespace {

void CheckFeatures(const LabeledFeatures &f, const char *name, Eigen::Index dim) {
  Require(f.x.rows() == static_cast<Eigen::Index>(f.y.size()) && !f.y.empty(),
          ErrorCode::kInvalidArgument, std::string(name) + " features and labels disagree or are empty");
  Require(f.x.cols() == dim, ErrorCode::kInvalidArgument, std::string(name) + " feature width differs");
}

}  // namespace

HeadReport TrainHead(const LabeledFeatures &train, const LabeledFeatures &dev,
                     const LabeledFeatures &test, const HeadConfig &config) {
  const Eigen::Index dim = train.x.cols();
  CheckFeatures(train, "train", dim);
  CheckFeatures(dev, "dev", dim);
  CheckFeatures(test, "test", dim);
  Require(!config.learning_rates.empty() && config.epochs >= 1 && config.batch_size >= 1,
          ErrorCode::kInvalidArgument, "invalid head configuration");

  HeadReport report;
  report.dev_accuracy = -1.0;
  std::map<std::string, Matrix> best_params;
  for (double lr : config.learning_rates) {
    MlpHead head(static_cast<int>(dim), MixSeed(config.seed, 0));
    head.params().SetRequiresGrad(true);
    std::vector<train::AdamW::Param> params;
    for (const Var &v : head.params().vars()) params.push_back({v, false});
    train::AdamW optimizer(std::move(params), lr, 0.9, 0.999, 1e-8, 0.0);
    Rng rng(MixSeed(config.seed, 1));
    std::vector<Eigen::Index> order(static_cast<size_t>(train.x.rows()));
    std::iota(order.begin(), order.end(), 0);
    double best_dev = -1.0;
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
      Shuffle(order, rng);
      for (size_t start = 0; start < order.size(); start += static_cast<size_t>(config.batch_size)) {
        const size_t end = std::min(order.size(), start + static_cast<size_t>(config.batch_size));
        Matrix xb(static_cast<Eigen::Index>(end - start), dim);
        std::vector<int> yb;
        for (size_t i = start; i < end; ++i) {
          xb.row(static_cast<Eigen::Index>(i - start)) = train.x.row(order[i]);
          yb.push_back(train.y[static_cast<size_t>(order[i])]);
        }
        optimizer.ZeroGrad();
        lm::Backward(lm::CrossEntropy(head.Logits(Var(xb)), yb));
        optimizer.Step();
      }
      const double dev_acc = Accuracy(head.Predict(dev.x), dev.y);
      if (dev_acc > best_dev) best_dev = dev_acc;
      if (dev_acc > report.dev_accuracy) {
        report.dev_accuracy = dev_acc;
        report.learning_rate = lr;
        report.best_epoch = epoch;
        best_params = head.params().Snapshot();
      }
    }
    report.dev_accuracy_by_lr[lr] = best_dev;
  }
  MlpHead best(static_cast<int>(dim), 0);
  best.params().Restore(best_params);
  report.test_accuracy = Accuracy(best.Predict(test.x), test.y);
  return report;
}

Matrix ExtractFeatures(const std::vector<std::string> &texts, const lm::MaskedLanguageModel &model) {
  Matrix out(static_cast<Eigen::Index>(texts.size()), model.hidden_dim());
  const int budget = model.max_length() - 2;
  for (size_t i = 0; i < texts.size(); ++i) {
    std::vector<std::string> words = TokenizeWords(texts[i]);
    int used = 0;
    size_t keep = 0;
    while (keep < words.size()) {
      const int n = static_cast<int>(model.WordIds(words[keep]).size());
      if (used + n > budget) break;
      used += n;
      ++keep;
    }
    words.resize(keep);
    const lm::AlignedEncoding enc = model.Align(words);
    out.row(static_cast<Eigen::Index>(i)) = model.HiddenStates(enc).row(0);
  }
  return out;
}

nlohmann::json SentimentReportToJson(const SentimentReport &report) {
  nlohmann::json by_lr = nlohmann::json::object();
  for (const auto &[lr, acc] : report.head.dev_accuracy_by_lr) {
    std::ostringstream key;
    key << lr;
    by_lr[key.str()] = acc;
  }
  return {{"encoder", report.encoder_name},
          {"encoder_checksum", report.checksum},
          {"learning_rate", report.head.learning_rate},
          {"best_epoch", report.head.best_epoch},
          {"dev_accuracy", report.head.dev_accuracy},
          {"test_accuracy", report.head.test_accuracy},
          {"dev_accuracy_by_lr", by_lr}};
}

SentimentReport RunSentimentProbe(const std::vector<ReviewExample> &dataset,
                                  const lm::MaskedLanguageModel &model, const HeadConfig &config) {
  SentimentReport report;
  report.encoder_name = model.name();
  report.checksum = model.ParameterChecksum();
  std::vector<std::string> texts[3];
  LabeledFeatures splits[3];
  for (const ReviewExample &ex : dataset) {
    const int s = static_cast<int>(ex.split);
    texts[s].push_back(ex.text);
    splits[s].y.push_back(ex.label == Polarity::kPositive ? 1 : 0);
  }
  for (int s = 0; s < 3; ++s) {
    Require(!texts[s].empty(), ErrorCode::kPrecondition,
            std::string("no ") + std::string(SplitName(static_cast<Split>(s))) + " reviews");
    splits[s].x = ExtractFeatures(texts[s], model);
  }
  report.head = TrainHead(splits[0], splits[1], splits[2], config);
  const std::string after = model.ParameterChecksum();
  Require(after == report.checksum, ErrorCode::kStageFailure,
          "encoder parameters changed during head training");
  return report;
}

}  // namespace simprobe::sentiment
