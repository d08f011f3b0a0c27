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

#include <functional>

#include <gtest/gtest.h>

#include "simprobe/common/error.h"
#include "simprobe/lm/autograd.h"

namespace simprobe::lm {
namespace {

Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = StandardNormal(rng);
  return m;
}

// Checks analytic gradients of `f` against central differences for every
// entry of every input.
void CheckGradients(const std::function<Var(const std::vector<Var> &)> &f,
                    std::vector<Matrix> values, double tol = 1e-6) {
  std::vector<Var> inputs;
  for (const Matrix &v : values) inputs.emplace_back(v, true);
  Var out = f(inputs);
  Backward(out);
  const double h = 1e-6;
  for (size_t k = 0; k < values.size(); ++k) {
    for (Eigen::Index i = 0; i < values[k].size(); ++i) {
      auto eval = [&](double delta) {
        std::vector<Var> probe;
        for (size_t j = 0; j < values.size(); ++j) {
          Matrix v = values[j];
          if (j == k) v.data()[i] += delta;
          probe.emplace_back(v, false);
        }
        return f(probe).item();
      };
      const double numeric = (eval(h) - eval(-h)) / (2 * h);
      const double analytic =
          inputs[k].grad().size() == 0 ? 0.0 : inputs[k].grad().data()[i];
      EXPECT_NEAR(analytic, numeric, tol * std::max(1.0, std::abs(numeric)))
          << "input " << k << " entry " << i;
    }
  }
}

// Reduces a matrix output to a scalar with fixed random weights so every
// entry of the output contributes to the gradient.
Var Project(const Var &x, uint64_t seed = 99) {
  Rng rng(seed);
  return Sum(Mul(x, Var(RandomMatrix(x.rows(), x.cols(), rng))));
}

class AutogradTest : public ::testing::Test {
 protected:
  Rng rng_{7};
  Matrix R(Eigen::Index r, Eigen::Index c) { return RandomMatrix(r, c, rng_); }
};

TEST_F(AutogradTest, ElementwiseOps) {
  CheckGradients([](auto &v) { return Project(Add(v[0], v[1])); }, {R(2, 3), R(2, 3)});
  CheckGradients([](auto &v) { return Project(Sub(v[0], v[1])); }, {R(2, 3), R(2, 3)});
  CheckGradients([](auto &v) { return Project(Mul(v[0], v[1])); }, {R(2, 3), R(2, 3)});
  CheckGradients([](auto &v) { return Project(Scale(v[0], -1.7)); }, {R(3, 2)});
  CheckGradients([](auto &v) { return Project(AddRow(v[0], v[1])); }, {R(3, 4), R(1, 4)});
}

TEST_F(AutogradTest, MatrixProducts) {
  CheckGradients([](auto &v) { return Project(MatMul(v[0], v[1])); }, {R(2, 3), R(3, 4)});
  CheckGradients([](auto &v) { return Project(MatMulT(v[0], v[1])); }, {R(2, 3), R(4, 3)});
  CheckGradients([](auto &v) { return Project(Transpose(v[0])); }, {R(2, 3)});
  CheckGradients([](auto &v) { return Project(Linear(v[0], v[1], v[2])); },
                 {R(3, 4), R(5, 4), R(1, 5)});
}

TEST_F(AutogradTest, Activations) {
  CheckGradients([](auto &v) { return Project(Gelu(v[0])); }, {R(3, 4)});
  CheckGradients([](auto &v) { return Project(Tanh(v[0])); }, {R(3, 4)});
  Matrix away_from_kink = R(3, 4);
  for (Eigen::Index i = 0; i < away_from_kink.size(); ++i) {
    if (std::abs(away_from_kink.data()[i]) < 0.1) away_from_kink.data()[i] = 0.5;
  }
  CheckGradients([](auto &v) { return Project(Relu(v[0])); }, {away_from_kink});
}

TEST_F(AutogradTest, Normalizations) {
  CheckGradients([](auto &v) { return Project(LayerNorm(v[0], v[1], v[2], 1e-12)); },
                 {R(3, 5), R(1, 5), R(1, 5)}, 1e-5);
  CheckGradients([](auto &v) { return Project(SoftmaxRows(v[0])); }, {R(3, 4)});
  CheckGradients([](auto &v) { return Project(LogSoftmaxRows(v[0])); }, {R(3, 4)});
  CheckGradients([](auto &v) { return Project(Normalize(v[0])); }, {R(1, 6)});
}

TEST_F(AutogradTest, IndexingAndShapes) {
  CheckGradients([](auto &v) { return Project(GatherRows(v[0], {2, 0, 2})); }, {R(4, 3)});
  CheckGradients([](auto &v) { return Project(SliceRows(v[0], 1, 2)); }, {R(4, 3)});
  CheckGradients([](auto &v) { return Project(SliceCols(v[0], 1, 2)); }, {R(3, 4)});
  CheckGradients([](auto &v) { return Project(ConcatCols({v[0], v[1]})); }, {R(2, 3), R(2, 1)});
  CheckGradients([](auto &v) { return Project(ConcatRows({v[0], v[1]})); }, {R(1, 3), R(2, 3)});
  CheckGradients([](auto &v) { return Project(MeanRows(v[0])); }, {R(4, 3)});
}

TEST_F(AutogradTest, Reductions) {
  CheckGradients([](auto &v) { return Sum(v[0]); }, {R(2, 3)});
  CheckGradients([](auto &v) { return Mean(v[0]); }, {R(2, 3)});
  CheckGradients([](auto &v) { return Dot(v[0], v[1]); }, {R(1, 4), R(1, 4)});
  CheckGradients([](auto &v) { return Project(ScaleBy(v[0], v[1])); }, {R(1, 1), R(2, 3)});
  CheckGradients([](auto &v) { return Mse(v[0], v[1]); }, {R(2, 3), R(2, 3)});
  CheckGradients([](auto &v) { return CrossEntropy(v[0], {1, 3}); }, {R(2, 4)});
}

TEST_F(AutogradTest, ReusedNodesAccumulate) {
  // y = sum(x * x) + sum(x) has gradient 2x + 1.
  Matrix x = R(2, 2);
  Var v(x, true);
  Backward(Add(Sum(Mul(v, v)), Sum(v)));
  EXPECT_TRUE(v.grad().isApprox((2.0 * x.array() + 1.0).matrix(), 1e-12));
}

TEST_F(AutogradTest, NoGradGuardBuildsNoGraph) {
  Var v(R(2, 2), true);
  NoGradGuard guard;
  Var y = Sum(Mul(v, v));
  EXPECT_FALSE(y.requires_grad());
  EXPECT_TRUE(y.node()->inputs.empty());
}

TEST_F(AutogradTest, CrossEntropyValues) {
  // Uniform logits over V classes give ln V.
  Var uniform(Matrix::Zero(2, 10));
  EXPECT_NEAR(CrossEntropy(uniform, {0, 9}).item(), std::log(10.0), 1e-12);
  Matrix peaked = Matrix::Constant(1, 5, -1e4);
  peaked(0, 2) = 0.0;
  EXPECT_NEAR(CrossEntropy(Var(peaked), {2}).item(), 0.0, 1e-12);
}

TEST_F(AutogradTest, DropoutIsSeededAndUnbiasedInScale) {
  Var ones(Matrix::Ones(200, 50));
  Rng a(3), b(3);
  Matrix da = Dropout(ones, 0.1, a).value();
  Matrix db = Dropout(ones, 0.1, b).value();
  EXPECT_EQ(da, db);
  EXPECT_NEAR(da.mean(), 1.0, 0.02);
  Rng c(1);
  EXPECT_EQ(Dropout(ones, 0.0, c).value(), ones.value());
}

TEST_F(AutogradTest, ShapeErrorsThrow) {
  EXPECT_THROW(Add(Var(R(2, 2)), Var(R(2, 3))), Error);
  EXPECT_THROW(MatMul(Var(R(2, 2)), Var(R(3, 3))), Error);
  EXPECT_THROW(Backward(Var(R(2, 2), true)), Error);
  EXPECT_THROW(Normalize(Var(Matrix::Zero(1, 3))), Error);
}

}  // namespace
}  // namespace simprobe::lm
