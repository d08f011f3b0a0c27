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

#include "simprobe/lm/autograd.h"

#include <cmath>
#include <numbers>
#include <unordered_set>

#include "simprobe/common/error.h"

namespace simprobe::lm {
namespace {

void Accumulate(const std::shared_ptr<Node> &node, const Matrix &g) {
  if (!node->requires_grad) return;
  if (node->grad.size() == 0) {
    node->grad = g;
  } else {
    node->grad += g;
  }
}

template <typename Expr>
void AccumulateExpr(const std::shared_ptr<Node> &node, const Expr &g) {
  if (!node->requires_grad) return;
  if (node->grad.size() == 0) {
    node->grad = g;
  } else {
    node->grad += g;
  }
}

void CheckSameShape(const Var &a, const Var &b, const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    Fail(ErrorCode::kInvalidArgument,
         std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
             std::to_string(b.cols()));
  }
}

thread_local bool grad_enabled = true;

}  // namespace

NoGradGuard::NoGradGuard() : previous_(grad_enabled) { grad_enabled = false; }
NoGradGuard::~NoGradGuard() { grad_enabled = previous_; }

bool GradEnabled() { return grad_enabled; }

Var::Var(Matrix value, bool requires_grad) : node_(std::make_shared<Node>()) {
  node_->value = std::move(value);
  node_->requires_grad = requires_grad;
}

Var Var::Scalar(double value) {
  Matrix m(1, 1);
  m(0, 0) = value;
  return Var(std::move(m));
}

double Var::item() const {
  Require(rows() == 1 && cols() == 1, ErrorCode::kInvalidArgument,
          "item() needs a 1x1 value");
  return node_->value(0, 0);
}

void Var::ZeroGrad() {
  if (node_) node_->grad.resize(0, 0);
}

Var MakeResult(Matrix value, std::vector<Var> inputs,
               std::function<void(Node &)> backward) {
  Var out;
  out.node_ = std::make_shared<Node>();
  out.node_->value = std::move(value);
  bool needs = false;
  if (grad_enabled) {
    for (const Var &v : inputs) needs = needs || v.requires_grad();
  }
  if (needs) {
    out.node_->requires_grad = true;
    out.node_->inputs.reserve(inputs.size());
    for (const Var &v : inputs) out.node_->inputs.push_back(v.node());
    out.node_->backward = std::move(backward);
  }
  return out;
}

void Backward(const Var &root) {
  Require(root.rows() == 1 && root.cols() == 1, ErrorCode::kInvalidArgument,
          "Backward needs a scalar root");
  if (!root.requires_grad()) return;
  // Iterative post-order DFS gives a topological order.
  std::vector<Node *> order;
  std::unordered_set<Node *> visited;
  std::vector<std::pair<Node *, size_t>> stack;
  stack.emplace_back(root.node().get(), 0);
  visited.insert(root.node().get());
  while (!stack.empty()) {
    auto &[node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node *child = node->inputs[next++].get();
      if (child->requires_grad && visited.insert(child).second) {
        stack.emplace_back(child, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  Node &r = *root.node();
  if (r.grad.size() == 0) {
    r.grad = Matrix::Ones(1, 1);
  } else {
    r.grad.array() += 1.0;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node *node = *it;
    if (node->backward && node->grad.size() != 0) node->backward(*node);
  }
}

Var Add(const Var &a, const Var &b) {
  CheckSameShape(a, b, "Add");
  return MakeResult(a.value() + b.value(), {a, b}, [](Node &self) {
    Accumulate(self.inputs[0], self.grad);
    Accumulate(self.inputs[1], self.grad);
  });
}

Var Sub(const Var &a, const Var &b) {
  CheckSameShape(a, b, "Sub");
  return MakeResult(a.value() - b.value(), {a, b}, [](Node &self) {
    Accumulate(self.inputs[0], self.grad);
    AccumulateExpr(self.inputs[1], -self.grad);
  });
}

Var Mul(const Var &a, const Var &b) {
  CheckSameShape(a, b, "Mul");
  return MakeResult(a.value().cwiseProduct(b.value()), {a, b}, [](Node &self) {
    const Matrix &av = self.inputs[0]->value;
    const Matrix &bv = self.inputs[1]->value;
    AccumulateExpr(self.inputs[0], self.grad.cwiseProduct(bv));
    AccumulateExpr(self.inputs[1], self.grad.cwiseProduct(av));
  });
}

Var Scale(const Var &a, double factor) {
  return MakeResult(a.value() * factor, {a}, [factor](Node &self) {
    AccumulateExpr(self.inputs[0], self.grad * factor);
  });
}

Var AddRow(const Var &a, const Var &row) {
  Require(row.rows() == 1 && row.cols() == a.cols(), ErrorCode::kInvalidArgument,
          "AddRow: row must be 1 x cols");
  Matrix out = a.value();
  out.rowwise() += row.value().row(0);
  return MakeResult(std::move(out), {a, row}, [](Node &self) {
    Accumulate(self.inputs[0], self.grad);
    AccumulateExpr(self.inputs[1], self.grad.colwise().sum());
  });
}

Var MatMul(const Var &a, const Var &b) {
  Require(a.cols() == b.rows(), ErrorCode::kInvalidArgument,
          "MatMul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  out.noalias() = a.value() * b.value();
  return MakeResult(std::move(out), {a, b}, [](Node &self) {
    const Matrix &av = self.inputs[0]->value;
    const Matrix &bv = self.inputs[1]->value;
    if (self.inputs[0]->requires_grad) {
      Matrix ga(av.rows(), av.cols());
      ga.noalias() = self.grad * bv.transpose();
      Accumulate(self.inputs[0], ga);
    }
    if (self.inputs[1]->requires_grad) {
      Matrix gb(bv.rows(), bv.cols());
      gb.noalias() = av.transpose() * self.grad;
      Accumulate(self.inputs[1], gb);
    }
  });
}

Var MatMulT(const Var &a, const Var &b) {
  Require(a.cols() == b.cols(), ErrorCode::kInvalidArgument,
          "MatMulT: column counts differ");
  Matrix out(a.rows(), b.rows());
  out.noalias() = a.value() * b.value().transpose();
  return MakeResult(std::move(out), {a, b}, [](Node &self) {
    const Matrix &av = self.inputs[0]->value;
    const Matrix &bv = self.inputs[1]->value;
    if (self.inputs[0]->requires_grad) {
      Matrix ga(av.rows(), av.cols());
      ga.noalias() = self.grad * bv;
      Accumulate(self.inputs[0], ga);
    }
    if (self.inputs[1]->requires_grad) {
      Matrix gb(bv.rows(), bv.cols());
      gb.noalias() = self.grad.transpose() * av;
      Accumulate(self.inputs[1], gb);
    }
  });
}

Var Transpose(const Var &a) {
  return MakeResult(a.value().transpose(), {a}, [](Node &self) {
    AccumulateExpr(self.inputs[0], self.grad.transpose());
  });
}

Var Linear(const Var &x, const Var &weight, const Var &bias) {
  Require(x.cols() == weight.cols(), ErrorCode::kInvalidArgument,
          "Linear: input width " + std::to_string(x.cols()) +
              " does not match weight " + std::to_string(weight.rows()) + "x" +
              std::to_string(weight.cols()));
  Matrix out(x.rows(), weight.rows());
  out.noalias() = x.value() * weight.value().transpose();
  out.rowwise() += bias.value().row(0);
  return MakeResult(std::move(out), {x, weight, bias}, [](Node &self) {
    const Matrix &xv = self.inputs[0]->value;
    const Matrix &wv = self.inputs[1]->value;
    if (self.inputs[0]->requires_grad) {
      Matrix gx(xv.rows(), xv.cols());
      gx.noalias() = self.grad * wv;
      Accumulate(self.inputs[0], gx);
    }
    if (self.inputs[1]->requires_grad) {
      Matrix gw(wv.rows(), wv.cols());
      gw.noalias() = self.grad.transpose() * xv;
      Accumulate(self.inputs[1], gw);
    }
    AccumulateExpr(self.inputs[2], self.grad.colwise().sum());
  });
}

Var Gelu(const Var &x) {
  const Matrix &xv = x.value();
  Matrix out = xv.unaryExpr([](double v) {
    return 0.5 * v * (1.0 + std::erf(v * std::numbers::sqrt2 / 2.0));
  });
  return MakeResult(std::move(out), {x}, [](Node &self) {
    const Matrix &xv = self.inputs[0]->value;
    Matrix d = xv.unaryExpr([](double v) {
      double cdf = 0.5 * (1.0 + std::erf(v * std::numbers::sqrt2 / 2.0));
      double pdf = std::exp(-0.5 * v * v) * std::numbers::inv_sqrtpi /
                   std::numbers::sqrt2;
      return cdf + v * pdf;
    });
    AccumulateExpr(self.inputs[0], self.grad.cwiseProduct(d));
  });
}

Var Tanh(const Var &x) {
  Matrix out = x.value().array().tanh().matrix();
  return MakeResult(out, {x}, [out](Node &self) {
    AccumulateExpr(self.inputs[0],
                   self.grad.cwiseProduct((1.0 - out.array().square()).matrix()));
  });
}

Var Relu(const Var &x) {
  Matrix out = x.value().cwiseMax(0.0);
  return MakeResult(std::move(out), {x}, [](Node &self) {
    const Matrix &xv = self.inputs[0]->value;
    AccumulateExpr(self.inputs[0],
                   self.grad.cwiseProduct(
                       xv.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; })));
  });
}

Var LayerNorm(const Var &x, const Var &gamma, const Var &beta, double eps) {
  const Matrix &xv = x.value();
  const Eigen::Index rows = xv.rows(), cols = xv.cols();
  Require(gamma.cols() == cols && beta.cols() == cols, ErrorCode::kInvalidArgument,
          "LayerNorm: parameter width mismatch");
  Matrix xhat(rows, cols);
  Vector rstd(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    double mean = xv.row(r).mean();
    double var = (xv.row(r).array() - mean).square().mean();
    rstd(r) = 1.0 / std::sqrt(var + eps);
    xhat.row(r) = (xv.row(r).array() - mean) * rstd(r);
  }
  Matrix out = xhat;
  for (Eigen::Index r = 0; r < rows; ++r) {
    out.row(r) = xhat.row(r).cwiseProduct(gamma.value().row(0)) + beta.value().row(0);
  }
  return MakeResult(std::move(out), {x, gamma, beta},
                    [xhat = std::move(xhat), rstd = std::move(rstd)](Node &self) {
                      const Matrix &g = self.grad;
                      const Matrix &gv = self.inputs[1]->value;
                      const Eigen::Index n = g.cols();
                      if (self.inputs[0]->requires_grad) {
                        Matrix dx(g.rows(), n);
                        for (Eigen::Index r = 0; r < g.rows(); ++r) {
                          Eigen::RowVectorXd dxhat = g.row(r).cwiseProduct(gv.row(0));
                          double sum = dxhat.sum();
                          double dot = dxhat.dot(xhat.row(r));
                          dx.row(r) = (rstd(r) / static_cast<double>(n)) *
                                      (static_cast<double>(n) * dxhat.array() - sum -
                                       xhat.row(r).array() * dot)
                                          .matrix();
                        }
                        Accumulate(self.inputs[0], dx);
                      }
                      AccumulateExpr(self.inputs[1],
                                     g.cwiseProduct(xhat).colwise().sum());
                      AccumulateExpr(self.inputs[2], g.colwise().sum());
                    });
}

namespace {

Matrix SoftmaxValue(const Matrix &x) {
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    double max = x.row(r).maxCoeff();
    out.row(r) = (x.row(r).array() - max).exp().matrix();
    out.row(r) /= out.row(r).sum();
  }
  return out;
}

Matrix LogSoftmaxValue(const Matrix &x) {
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    double max = x.row(r).maxCoeff();
    double lse = max + std::log((x.row(r).array() - max).exp().sum());
    out.row(r) = x.row(r).array() - lse;
  }
  return out;
}

}  // namespace

Var SoftmaxRows(const Var &x) {
  Matrix out = SoftmaxValue(x.value());
  return MakeResult(out, {x}, [out](Node &self) {
    Matrix dx(out.rows(), out.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      double dot = self.grad.row(r).dot(out.row(r));
      dx.row(r) = out.row(r).cwiseProduct(
          (self.grad.row(r).array() - dot).matrix());
    }
    Accumulate(self.inputs[0], dx);
  });
}

Var LogSoftmaxRows(const Var &x) {
  Matrix out = LogSoftmaxValue(x.value());
  return MakeResult(out, {x}, [out](Node &self) {
    Matrix dx(out.rows(), out.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      double sum = self.grad.row(r).sum();
      dx.row(r) = self.grad.row(r) - (out.row(r).array().exp() * sum).matrix();
    }
    Accumulate(self.inputs[0], dx);
  });
}

Var GatherRows(const Var &table, const std::vector<int> &ids) {
  Matrix out(static_cast<Eigen::Index>(ids.size()), table.cols());
  for (size_t i = 0; i < ids.size(); ++i) {
    Require(ids[i] >= 0 && ids[i] < table.rows(), ErrorCode::kOutOfRange,
            "GatherRows: id " + std::to_string(ids[i]) + " out of range");
    out.row(static_cast<Eigen::Index>(i)) = table.value().row(ids[i]);
  }
  return MakeResult(std::move(out), {table}, [ids](Node &self) {
    auto &input = self.inputs[0];
    if (input->grad.size() == 0) {
      input->grad = Matrix::Zero(input->value.rows(), input->value.cols());
    }
    for (size_t i = 0; i < ids.size(); ++i) {
      input->grad.row(ids[i]) += self.grad.row(static_cast<Eigen::Index>(i));
    }
  });
}

Var SliceRows(const Var &x, int begin, int count) {
  Require(begin >= 0 && count >= 0 && begin + count <= x.rows(),
          ErrorCode::kOutOfRange, "SliceRows out of range");
  Matrix out = x.value().middleRows(begin, count);
  return MakeResult(std::move(out), {x}, [begin, count](Node &self) {
    auto &input = self.inputs[0];
    if (input->grad.size() == 0) {
      input->grad = Matrix::Zero(input->value.rows(), input->value.cols());
    }
    input->grad.middleRows(begin, count) += self.grad;
  });
}

Var SliceCols(const Var &x, int begin, int count) {
  Require(begin >= 0 && count >= 0 && begin + count <= x.cols(),
          ErrorCode::kOutOfRange, "SliceCols out of range");
  Matrix out = x.value().middleCols(begin, count);
  return MakeResult(std::move(out), {x}, [begin, count](Node &self) {
    auto &input = self.inputs[0];
    if (input->grad.size() == 0) {
      input->grad = Matrix::Zero(input->value.rows(), input->value.cols());
    }
    input->grad.middleCols(begin, count) += self.grad;
  });
}

Var ConcatCols(const std::vector<Var> &parts) {
  Require(!parts.empty(), ErrorCode::kInvalidArgument, "ConcatCols of nothing");
  Eigen::Index rows = parts.front().rows(), cols = 0;
  for (const Var &p : parts) {
    Require(p.rows() == rows, ErrorCode::kInvalidArgument,
            "ConcatCols: row counts differ");
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<Eigen::Index> offsets;
  Eigen::Index offset = 0;
  for (const Var &p : parts) {
    offsets.push_back(offset);
    out.middleCols(offset, p.cols()) = p.value();
    offset += p.cols();
  }
  return MakeResult(std::move(out), parts, [offsets](Node &self) {
    for (size_t i = 0; i < self.inputs.size(); ++i) {
      auto &input = self.inputs[i];
      AccumulateExpr(input, self.grad.middleCols(offsets[i], input->value.cols()));
    }
  });
}

Var ConcatRows(const std::vector<Var> &parts) {
  Require(!parts.empty(), ErrorCode::kInvalidArgument, "ConcatRows of nothing");
  Eigen::Index cols = parts.front().cols(), rows = 0;
  for (const Var &p : parts) {
    Require(p.cols() == cols, ErrorCode::kInvalidArgument,
            "ConcatRows: column counts differ");
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::vector<Eigen::Index> offsets;
  Eigen::Index offset = 0;
  for (const Var &p : parts) {
    offsets.push_back(offset);
    out.middleRows(offset, p.rows()) = p.value();
    offset += p.rows();
  }
  return MakeResult(std::move(out), parts, [offsets](Node &self) {
    for (size_t i = 0; i < self.inputs.size(); ++i) {
      auto &input = self.inputs[i];
      AccumulateExpr(input, self.grad.middleRows(offsets[i], input->value.rows()));
    }
  });
}

Var MeanRows(const Var &x) {
  Require(x.rows() > 0, ErrorCode::kInvalidArgument, "MeanRows of empty matrix");
  Matrix out = x.value().colwise().mean();
  return MakeResult(std::move(out), {x}, [](Node &self) {
    auto &input = self.inputs[0];
    const double inv = 1.0 / static_cast<double>(input->value.rows());
    Matrix g = self.grad.replicate(input->value.rows(), 1) * inv;
    Accumulate(input, g);
  });
}

Var Sum(const Var &x) {
  Matrix out(1, 1);
  out(0, 0) = x.value().sum();
  return MakeResult(std::move(out), {x}, [](Node &self) {
    auto &input = self.inputs[0];
    AccumulateExpr(input, Matrix::Constant(input->value.rows(), input->value.cols(),
                                           self.grad(0, 0)));
  });
}

Var Mean(const Var &x) {
  Require(x.value().size() > 0, ErrorCode::kInvalidArgument, "Mean of empty matrix");
  return Scale(Sum(x), 1.0 / static_cast<double>(x.value().size()));
}

Var Dot(const Var &a, const Var &b) {
  Require(a.rows() == 1 && b.rows() == 1 && a.cols() == b.cols(),
          ErrorCode::kInvalidArgument, "Dot needs equal-length row vectors");
  Matrix out(1, 1);
  out(0, 0) = a.value().row(0).dot(b.value().row(0));
  return MakeResult(std::move(out), {a, b}, [](Node &self) {
    double g = self.grad(0, 0);
    AccumulateExpr(self.inputs[0], self.inputs[1]->value * g);
    AccumulateExpr(self.inputs[1], self.inputs[0]->value * g);
  });
}

Var ScaleBy(const Var &s, const Var &x) {
  Require(s.rows() == 1 && s.cols() == 1, ErrorCode::kInvalidArgument,
          "ScaleBy needs a 1x1 scale");
  double factor = s.value()(0, 0);
  return MakeResult(x.value() * factor, {s, x}, [factor](Node &self) {
    Matrix ds(1, 1);
    ds(0, 0) = self.grad.cwiseProduct(self.inputs[1]->value).sum();
    Accumulate(self.inputs[0], ds);
    AccumulateExpr(self.inputs[1], self.grad * factor);
  });
}

Var Normalize(const Var &x) {
  Require(x.rows() == 1, ErrorCode::kInvalidArgument, "Normalize needs a row vector");
  double norm = x.value().norm();
  Require(norm > 0.0, ErrorCode::kInvalidArgument, "Normalize of a zero vector");
  Matrix out = x.value() / norm;
  return MakeResult(out, {x}, [out, norm](Node &self) {
    double dot = self.grad.row(0).dot(out.row(0));
    AccumulateExpr(self.inputs[0], (self.grad - out * dot) / norm);
  });
}

Var Mse(const Var &a, const Var &b) {
  CheckSameShape(a, b, "Mse");
  Matrix diff = a.value() - b.value();
  const double n = static_cast<double>(diff.size());
  Matrix out(1, 1);
  out(0, 0) = diff.squaredNorm() / n;
  return MakeResult(std::move(out), {a, b}, [diff, n](Node &self) {
    double g = self.grad(0, 0);
    AccumulateExpr(self.inputs[0], diff * (2.0 * g / n));
    AccumulateExpr(self.inputs[1], diff * (-2.0 * g / n));
  });
}

Var CrossEntropy(const Var &logits, const std::vector<int> &targets) {
  Require(static_cast<Eigen::Index>(targets.size()) == logits.rows() && !targets.empty(),
          ErrorCode::kInvalidArgument, "CrossEntropy: one target per row");
  Matrix logp = LogSoftmaxValue(logits.value());
  double loss = 0.0;
  for (size_t i = 0; i < targets.size(); ++i) {
    Require(targets[i] >= 0 && targets[i] < logits.cols(), ErrorCode::kOutOfRange,
            "CrossEntropy: target out of range");
    loss -= logp(static_cast<Eigen::Index>(i), targets[i]);
  }
  const double n = static_cast<double>(targets.size());
  Matrix out(1, 1);
  out(0, 0) = loss / n;
  return MakeResult(std::move(out), {logits}, [logp, targets, n](Node &self) {
    Matrix d = logp.array().exp().matrix();
    for (size_t i = 0; i < targets.size(); ++i) {
      d(static_cast<Eigen::Index>(i), targets[i]) -= 1.0;
    }
    Accumulate(self.inputs[0], d * (self.grad(0, 0) / n));
  });
}

Var Dropout(const Var &x, double rate, Rng &rng) {
  if (rate <= 0.0) return x;
  Require(rate < 1.0, ErrorCode::kInvalidArgument, "dropout rate must be < 1");
  const double keep = 1.0 - rate;
  Matrix mask(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = UniformReal(rng) < keep ? 1.0 / keep : 0.0;
  }
  Matrix out = x.value().cwiseProduct(mask);
  return MakeResult(std::move(out), {x}, [mask](Node &self) {
    AccumulateExpr(self.inputs[0], self.grad.cwiseProduct(mask));
  });
}

}  // namespace simprobe::lm
