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

#ifndef SIMPROBE_TRAIN_ADAMW_H_
#define SIMPROBE_TRAIN_ADAMW_H_

#include <vector>

#include "simprobe/lm/autograd.h"

namespace simprobe::train {

// Adam with decoupled weight decay and bias correction.
class AdamW {
 public:
  struct Param {
    lm::Var var;
    bool decay = true;
  };

  AdamW(std::vector<Param> params, double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
        double epsilon = 1e-8, double weight_decay = 0.01);

  // Applies one update from the accumulated gradients. Parameters without a
  // gradient are left alone.
  void Step();
  void ZeroGrad();
  // True when every accumulated gradient is finite.
  bool GradientsFinite() const;

  int steps() const { return steps_; }
  void set_learning_rate(double lr) { learning_rate_ = lr; }

 private:
  std::vector<Param> params_;
  std::vector<lm::Matrix> m_;
  std::vector<lm::Matrix> v_;
  double learning_rate_, beta1_, beta2_, epsilon_, weight_decay_;
  int steps_ = 0;
};

}  // namespace simprobe::train

#endif  // SIMPROBE_TRAIN_ADAMW_H_
