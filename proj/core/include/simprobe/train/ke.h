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

#ifndef SIMPROBE_TRAIN_KE_H_
#define SIMPROBE_TRAIN_KE_H_

#include <cstdint>
#include <string_view>

#include "simprobe/lm/autograd.h"
#include "simprobe/lm/transformer.h"

namespace simprobe::train {

enum class KeVariant { kNone, kTransE, kTransH, kTransD };

std::string_view KeVariantName(KeVariant variant);
KeVariant ParseKeVariant(std::string_view name);

// Knowledge-embedding losses over 1 x d row vectors for topic (t),
// property (p) and vehicle (v). All reduce with a mean over dimensions.
//   TransE: mse(t + p, v)
//   TransH: mse(t_perp + Wd p, v_perp), x_perp = x - (w.x) w,
//           w = normalize(Wh p)
//   TransD: mse(Mt t + p, Mv v), Mx = (Wr p)(We x)^T + I
// The relation-specific vectors of TransH and TransD come from learned
// d x d maps of the property representation.
lm::Var TransELoss(const lm::Var &t, const lm::Var &p, const lm::Var &v);
lm::Var TransHLoss(const lm::Var &t, const lm::Var &p, const lm::Var &v, const lm::Var &w_h,
                   const lm::Var &w_d);
lm::Var TransDLoss(const lm::Var &t, const lm::Var &p, const lm::Var &v, const lm::Var &w_r,
                   const lm::Var &w_e);

// Holds the learned maps of a variant. TransE and none have no parameters.
class KeHead {
 public:
  KeHead(KeVariant variant, int dim, uint64_t seed);

  // Dimension mismatches raise kInvalidArgument. Not callable for kNone.
  lm::Var Loss(const lm::Var &t, const lm::Var &p, const lm::Var &v) const;

  KeVariant variant() const { return variant_; }
  int dim() const { return dim_; }
  lm::ParameterStore &params() { return params_; }
  const lm::ParameterStore &params() const { return params_; }

 private:
  KeVariant variant_;
  int dim_;
  lm::ParameterStore params_;
};

}  // namespace simprobe::train

#endif  // SIMPROBE_TRAIN_KE_H_
