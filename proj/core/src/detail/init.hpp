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

#include <algorithm>
#include <cmath>

#include "qcnet/error.hpp"
#include "qcnet/random.hpp"
#include "qcnet/tensor.hpp"

namespace qcnet::detail {

/// Uniform in [-sqrt(1 / fan_in), +sqrt(1 / fan_in)).
inline Tensor uniform_init(Tensor::Shape shape, std::size_t fan_in, Xoshiro256& rng, double gain = 1.0) {
  Tensor t(std::move(shape));
  const double bound = gain * std::sqrt(1.0 / static_cast<double>(fan_in));
  for (double& v : t.data()) v = rng.uniform(-bound, bound);
  return t;
}

// Output-side scale so that beta * M starts near unit size.
inline double tail_gain(double beta, double power) { return std::pow(std::max(beta, 1.0), -power); }

template <typename F>
auto in_layer(const char* layer, F&& f) {
  try {
    return f();
  } catch (const NumericError& e) {
    throw NumericError(std::string(layer) + " layer: " + e.what());
  }
}

}  // namespace qcnet::detail
