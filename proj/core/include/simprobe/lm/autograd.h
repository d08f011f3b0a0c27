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

#ifndef SIMPROBE_LM_AUTOGRAD_H_
#define SIMPROBE_LM_AUTOGRAD_H_

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "simprobe/common/random.h"

namespace simprobe::lm {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Reverse-mode automatic differentiation over dense row-major matrices.
//
// A Var is a handle to a node holding a value, an accumulated gradient and
// the closure that propagates its gradient to its inputs. Closures are only
// recorded when some input requires a gradient, so inference over frozen
// parameters builds no graph.
struct Node {
  Matrix value;
  Matrix grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> inputs;
  std::function<void(Node &)> backward;
};

class Var {
 public:
  Var() = default;
  explicit Var(Matrix value, bool requires_grad = false);

  static Var Scalar(double value);

  const Matrix &value() const { return node_->value; }
  Matrix &mutable_value() { return node_->value; }
  const Matrix &grad() const { return node_->grad; }
  Matrix &mutable_grad() { return node_->grad; }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  void set_requires_grad(bool value) { node_->requires_grad = value; }
  Eigen::Index rows() const { return node_->value.rows(); }
  Eigen::Index cols() const { return node_->value.cols(); }
  double item() const;
  bool defined() const { return node_ != nullptr; }

  void ZeroGrad();

  const std::shared_ptr<Node> &node() const { return node_; }

 private:
  friend Var MakeResult(Matrix value, std::vector<Var> inputs,
                        std::function<void(Node &)> backward);
  std::shared_ptr<Node> node_;
};

// While alive, ops on this thread record no graph regardless of inputs.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard &) = delete;
  NoGradGuard &operator=(const NoGradGuard &) = delete;

 private:
  bool previous_;
};

bool GradEnabled();

// Builds an op result; `backward` is dropped when no input needs gradients.
Var MakeResult(Matrix value, std::vector<Var> inputs,
               std::function<void(Node &)> backward);

// Accumulates d(root)/d(node) into every reachable node that requires a
// gradient. `root` must be 1x1.
void Backward(const Var &root);

// ---- Operations -----------------------------------------------------------

Var Add(const Var &a, const Var &b);
Var Sub(const Var &a, const Var &b);
Var Mul(const Var &a, const Var &b);  // element-wise
Var Scale(const Var &a, double factor);
// Adds a 1 x cols row to every row of `a`.
Var AddRow(const Var &a, const Var &row);
Var MatMul(const Var &a, const Var &b);
// a * b^T
Var MatMulT(const Var &a, const Var &b);
Var Transpose(const Var &a);
// x * weight^T + bias, weight stored [out, in] and bias [1, out].
Var Linear(const Var &x, const Var &weight, const Var &bias);

Var Gelu(const Var &x);  // erf form
Var Tanh(const Var &x);
Var Relu(const Var &x);

Var LayerNorm(const Var &x, const Var &gamma, const Var &beta, double eps);
Var SoftmaxRows(const Var &x);
Var LogSoftmaxRows(const Var &x);

// Rows of `table` at `ids`.
Var GatherRows(const Var &table, const std::vector<int> &ids);
Var SliceRows(const Var &x, int begin, int count);
Var SliceCols(const Var &x, int begin, int count);
Var ConcatCols(const std::vector<Var> &parts);
Var ConcatRows(const std::vector<Var> &parts);

// 1 x cols mean over rows.
Var MeanRows(const Var &x);
Var Sum(const Var &x);
Var Mean(const Var &x);
// Row-vector dot product, 1x1.
Var Dot(const Var &a, const Var &b);
// Multiplies every entry of `x` by the 1x1 `s`.
Var ScaleBy(const Var &s, const Var &x);
// x / ||x|| for a row vector.
Var Normalize(const Var &x);
// Mean over all entries of (a - b)^2.
Var Mse(const Var &a, const Var &b);
// Mean negative log-likelihood of `targets[i]` under row i of `logits`.
Var CrossEntropy(const Var &logits, const std::vector<int> &targets);
// Inverted dropout; identity when rate is 0.
Var Dropout(const Var &x, double rate, Rng &rng);

}  // namespace simprobe::lm

#endif  // SIMPROBE_LM_AUTOGRAD_H_
