// Copyright 2026 The qcnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcnet/adam.hpp"

namespace qcnet {
namespace {

TEST(Adam, FirstStepClosedForm) {
  std::vector<Tensor> params = {Tensor::vector({0.0, 5.0})};
  const std::vector<Tensor> grads = {Tensor::vector({1.0, -3.0})};
  AdamState st = AdamState::like(params);
  adam_step(AdamConfig{}, st, params, grads);
  EXPECT_EQ(st.k, 1u);
  EXPECT_NEAR(params[0][0], -0.1 / (1.0 + 1e-8), 1e-15);
  EXPECT_NEAR(params[0][1], 5.0 + 0.1 * 3.0 / (3.0 + 1e-8), 1e-15);
}

TEST(Adam, ZeroGradientNoChange) {
  std::vector<Tensor> params = {Tensor::vector({1.5, -2.0, 3.0})};
  const std::vector<Tensor> grads = {Tensor::vector({0.0, 0.0, 0.0})};
  AdamState st = AdamState::like(params);
  for (int i = 0; i < 10; ++i) adam_step(AdamConfig{}, st, params, grads);
  EXPECT_EQ(params[0].storage(), (std::vector<double>{1.5, -2.0, 3.0}));
}

TEST(Adam, ConstantGradientStepTendsToAlpha) {
  std::vector<Tensor> params = {Tensor::vector({0.0})};
  const std::vector<Tensor> grads = {Tensor::vector({0.37})};
  AdamState st = AdamState::like(params);
  double prev = 0.0, step = 0.0;
  for (int i = 0; i < 5000; ++i) {
    adam_step(AdamConfig{}, st, params, grads);
    step = prev - params[0][0];
    prev = params[0][0];
  }
  EXPECT_NEAR(step, 0.1, 1e-6);
}

TEST(Adam, ZeroBetasIsSignStep) {
  const AdamConfig cfg{0.05, 0.0, 0.0, 1e-8};
  Xoshiro256 rng(1);
  std::vector<Tensor> params = {testing::random_tensor({5}, rng)};
  AdamState st = AdamState::like(params);
  for (int it = 0; it < 5; ++it) {
    const std::vector<Tensor> grads = {testing::random_tensor({5}, rng)};
    const Tensor before = params[0];
    adam_step(cfg, st, params, grads);
    for (std::size_t i = 0; i < 5; ++i) {
      const double g = grads[0][i];
      EXPECT_NEAR(params[0][i], before[i] - 0.05 * g / (std::abs(g) + 1e-8), 1e-15);
    }
  }
}

TEST(Adam, ReferenceRecursion) {
  // Independent scalar implementation of the bias-corrected recursion.
  const AdamConfig cfg{0.01, 0.8, 0.95, 1e-6};
  Xoshiro256 rng(2);
  std::vector<Tensor> params = {Tensor::vector({0.3})};
  AdamState st = AdamState::like(params);
  double x = 0.3, m = 0.0, v = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double g = rng.uniform(-1, 1);
    adam_step(cfg, st, params, std::vector<Tensor>{Tensor::vector({g})});
    m = 0.8 * m + 0.2 * g;
    v = 0.95 * v + 0.05 * g * g;
    x -= 0.01 * (m / (1 - std::pow(0.8, k))) / (std::sqrt(v / (1 - std::pow(0.95, k))) + 1e-6);
    EXPECT_NEAR(params[0][0], x, 1e-14);
  }
}

TEST(Adam, FlatOptimizerAgreesWithTensorVersion) {
  Xoshiro256 rng(3);
  std::vector<double> flat = {0.1, -0.2, 0.3};
  std::vector<Tensor> params = {Tensor::vector(flat)};
  AdamState st = AdamState::like(params);
  Adam opt(AdamConfig{}, 3);
  for (int k = 0; k < 20; ++k) {
    const Tensor g = testing::random_tensor({3}, rng);
    opt.step(flat, g.storage());
    adam_step(AdamConfig{}, st, params, std::vector<Tensor>{g});
  }
  EXPECT_EQ(flat, params[0].storage());
  EXPECT_EQ(opt.steps(), 20u);
}

}  // namespace
}  // namespace qcnet
