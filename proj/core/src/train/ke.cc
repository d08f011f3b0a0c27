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

#include "simprobe/train/ke.h"

#include <string>

#include "simprobe/common/error.h"
#include "simprobe/common/random.h"

namespace simprobe::train {

using lm::Var;

std::string_view KeVariantName(KeVariant variant) {
  switch (variant) {
    case KeVariant::kNone: return "none";
    case KeVariant::kTransE: return "transe";
    case KeVariant::kTransH: return "transh";
    case KeVariant::kTransD: return "transd";
  }
  return "unknown";
}

KeVariant ParseKeVariant(std::string_view name) {
  for (KeVariant v : {KeVariant::kNone, KeVariant::kTransE, KeVariant::kTransH, KeVariant::kTransD}) {
    if (KeVariantName(v) == name) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown KE variant \"" + std::string(name) + "\"");
}

namespace {

void CheckRows(const Var &t, const Var &p, const Var &v) {
  for (const Var *x : {&t, &p, &v}) {
    Require(x->rows() == 1, ErrorCode::kInvalidArgument, "KE inputs must be row vectors");
  }
  Require(t.cols() == p.cols() && p.cols() == v.cols(), ErrorCode::kInvalidArgument,
          "KE inputs differ in dimension: " + std::to_string(t.cols()) + ", " +
              std::to_string(p.cols()) + ", " + std::to_string(v.cols()));
}

void CheckMap(const Var &w, Eigen::Index dim) {
  Require(w.rows() == dim && w.cols() == dim, ErrorCode::kInvalidArgument,
          "KE map must be " + std::to_string(dim) + " x " + std::to_string(dim));
}

// x - (w.x) w
Var Project(const Var &x, const Var &w) { return Sub(x, ScaleBy(Dot(w, x), w)); }

// (u_p u_x^T + I) x as a row vector: x + (u_x . x) u_p
Var Mapped(const Var &x, const Var &u_x, const Var &u_p) { return Add(x, ScaleBy(Dot(u_x, x), u_p)); }

}  // namespace

Var TransELoss(const Var &t, const Var &p, const Var &v) {
  CheckRows(t, p, v);
  return Mse(Add(t, p), v);
}

Var TransHLoss(const Var &t, const Var &p, const Var &v, const Var &w_h, const Var &w_d) {
  CheckRows(t, p, v);
  CheckMap(w_h, p.cols());
  CheckMap(w_d, p.cols());
  const Var w = Normalize(MatMulT(p, w_h));
  const Var d = MatMulT(p, w_d);
  return Mse(Add(Project(t, w), d), Project(v, w));
}

Var TransDLoss(const Var &t, const Var &p, const Var &v, const Var &w_r, const Var &w_e) {
  CheckRows(t, p, v);
  CheckMap(w_r, p.cols());
  CheckMap(w_e, p.cols());
  const Var u_p = MatMulT(p, w_r);
  return Mse(Add(Mapped(t, MatMulT(t, w_e), u_p), p), Mapped(v, MatMulT(v, w_e), u_p));
}

KeHead::KeHead(KeVariant variant, int dim, uint64_t seed) : variant_(variant), dim_(dim) {
  Require(dim > 0, ErrorCode::kInvalidArgument, "KE dimension must be positive");
  Rng rng(seed);
  auto init = [&](const std::string &name) {
    lm::Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = 0.02 * StandardNormal(rng);
    params_.Add(name, std::move(m));
  };
  if (variant == KeVariant::kTransH) {
    init("transh.w_h");
    init("transh.w_d");
  } else if (variant == KeVariant::kTransD) {
    init("transd.w_r");
    init("transd.w_e");
  }
}

Var KeHead::Loss(const Var &t, const Var &p, const Var &v) const {
  switch (variant_) {
    case KeVariant::kTransE: return TransELoss(t, p, v);
    case KeVariant::kTransH:
      return TransHLoss(t, p, v, params_.Get("transh.w_h"), params_.Get("transh.w_d"));
    case KeVariant::kTransD:
      return TransDLoss(t, p, v, params_.Get("transd.w_r"), params_.Get("transd.w_e"));
    case KeVariant::kNone: break;
  }
  throw Error(ErrorCode::kPrecondition, "KE loss requested for variant none");
}

}  // namespace simprobe::train
