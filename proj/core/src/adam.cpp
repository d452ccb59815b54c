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

#include "qcnet/adam.hpp"

#include <cmath>

#include "qcnet/error.hpp"

namespace qcnet {

namespace {

void update(const AdamConfig& c, std::uint64_t k, std::span<double> p, std::span<const double> g,
            std::span<double> m, std::span<double> v) {
  const double kd = static_cast<double>(k);
  const double c1 = 1.0 - std::pow(c.beta1, kd);
  const double c2 = 1.0 - std::pow(c.beta2, kd);
  for (std::size_t i = 0; i < p.size(); ++i) {
    m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g[i];
    v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g[i] * g[i];
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    p[i] -= c.alpha * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

}  // namespace

AdamState AdamState::like(std::span<const Tensor> params) {
  AdamState s;
  for (const Tensor& p : params) {
    s.m.emplace_back(p.shape(), 0.0);
    s.v.emplace_back(p.shape(), 0.0);
  }
  return s;
}

void adam_step(const AdamConfig& config, AdamState& state, std::span<Tensor> params,
               std::span<const Tensor> grads) {
  if (params.size() != grads.size() || params.size() != state.m.size() || params.size() != state.v.size()) {
    throw NumericError("adam_step: parameter, gradient and moment counts differ");
  }
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (params[t].shape() != grads[t].shape() || params[t].shape() != state.m[t].shape()) {
      throw NumericError("adam_step: shape mismatch " + params[t].shape_string() + " vs " +
                         grads[t].shape_string());
    }
  }
  ++state.k;
  for (std::size_t t = 0; t < params.size(); ++t) {
    update(config, state.k, params[t].data(), grads[t].data(), state.m[t].data(), state.v[t].data());
  }
}

Adam::Adam(AdamConfig config, std::size_t n) : config_(config), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) throw NumericError("Adam::step: size mismatch");
  ++k_;
  update(config_, k_, params, grads, m_, v_);
}

}  // namespace qcnet
