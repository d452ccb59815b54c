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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcnet/tensor.hpp"

namespace qcnet {

struct AdamConfig {
  double alpha = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First/second moment estimates, one tensor per parameter tensor, and the
/// step counter k (0 before the first step).
struct AdamState {
  std::uint64_t k = 0;
  std::vector<Tensor> m;
  std::vector<Tensor> v;

  /// Zero moments shaped like `params`.
  static AdamState like(std::span<const Tensor> params);
};

/// One bias-corrected Adam update of `params` in place; k advances to k + 1
/// before the corrections are applied, so the first step uses k = 1.
void adam_step(const AdamConfig& config, AdamState& state, std::span<Tensor> params,
               std::span<const Tensor> grads);

/// Flat-vector optimizer for small problems such as phase estimation.
class Adam {
 public:
  Adam(AdamConfig config, std::size_t n);

  void step(std::span<double> params, std::span<const double> grads);
  std::uint64_t steps() const { return k_; }

 private:
  AdamConfig config_;
  std::uint64_t k_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace qcnet
