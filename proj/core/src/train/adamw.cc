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

#include "simprobe/train/adamw.h"

#include <cmath>

namespace simprobe::train {

AdamW::AdamW(std::vector<Param> params, double learning_rate, double beta1, double beta2,
             double epsilon, double weight_decay)
    : params_(std::move(params)),
      learning_rate_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      epsilon_(epsilon),
      weight_decay_(weight_decay) {
  for (const Param &p : params_) {
    m_.push_back(lm::Matrix::Zero(p.var.rows(), p.var.cols()));
    v_.push_back(lm::Matrix::Zero(p.var.rows(), p.var.cols()));
  }
}

void AdamW::Step() {
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, steps_);
  const double c2 = 1.0 - std::pow(beta2_, steps_);
  for (size_t i = 0; i < params_.size(); ++i) {
    lm::Var &var = params_[i].var;
    const lm::Matrix &g = var.grad();
    if (g.size() == 0) continue;
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g.cwiseProduct(g);
    lm::Matrix &w = var.mutable_value();
    if (params_[i].decay && weight_decay_ > 0.0) w *= 1.0 - learning_rate_ * weight_decay_;
    w.array() -= learning_rate_ * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + epsilon_);
  }
}

void AdamW::ZeroGrad() {
  for (Param &p : params_) p.var.ZeroGrad();
}

bool AdamW::GradientsFinite() const {
  for (const Param &p : params_) {
    if (p.var.grad().size() != 0 && !p.var.grad().allFinite()) return false;
  }
  return true;
}

}  // namespace simprobe::train
