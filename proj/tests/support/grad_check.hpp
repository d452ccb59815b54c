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
#include <vector>

#include "qcnet/circuit.hpp"
#include "qcnet/random.hpp"
#include "qcnet/surrogate.hpp"
#include "qcnet/tape.hpp"

namespace qcnet::testing {

struct GradCheck {
  double weights_rel = 0.0;  // worst over sampled weight coordinates
  double theta_rel = 0.0;    // worst over all phase coordinates
};

inline double kl_at(const Surrogate& s, const std::vector<Tensor>& w, const std::vector<double>& theta,
                    const Tensor& target) {
  Tape tape;
  std::vector<Var> vars;
  for (const Tensor& t : w) vars.push_back(tape.constant_ref(t));
  return ad::kl_divergence(s.forward(tape, vars, tape.constant(Tensor::vector(theta))), target, 1e-9).value().item();
}

/// Reverse-mode KL gradient against central differences. `samples` weight
/// coordinates are checked (all of them if samples == 0); every phase is.
/// Relative error is max|g - fd| / max|fd| over the checked set.
inline GradCheck surrogate_grad_check(const Surrogate& s, const std::vector<double>& theta, const RealMatrix& target,
                                      std::size_t samples, Xoshiro256& rng, double h = 1e-6) {
  const Tensor tgt = to_tensor(target);
  std::vector<Tensor> at = s.params();
  at.push_back(Tensor::vector(theta));
  const GradientResult g = gradient(
      [&](Tape& tape, std::span<const Var> v) {
        return ad::kl_divergence(s.forward(tape, v.first(v.size() - 1), v.back()), tgt, 1e-9);
      },
      at);

  std::vector<Tensor> w = s.params();
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t i = 0; i < w[k].size(); ++i) coords.emplace_back(k, i);
  }
  if (samples && samples < coords.size()) {
    std::shuffle(coords.begin(), coords.end(), rng);
    coords.resize(samples);
  }
  double num = 0.0, den = 1e-12;
  for (auto [k, i] : coords) {
    const double x0 = w[k][i];
    w[k][i] = x0 + h;
    const double fp = kl_at(s, w, theta, tgt);
    w[k][i] = x0 - h;
    const double fm = kl_at(s, w, theta, tgt);
    w[k][i] = x0;
    const double fd = (fp - fm) / (2 * h);
    num = std::max(num, std::abs(g.grads[k][i] - fd));
    den = std::max(den, std::abs(fd));
  }
  GradCheck out;
  out.weights_rel = num / den;

  num = 0.0;
  den = 1e-12;
  std::vector<double> th = theta;
  for (std::size_t i = 0; i < th.size(); ++i) {
    const double x0 = th[i];
    th[i] = x0 + h;
    const double fp = kl_at(s, w, th, tgt);
    th[i] = x0 - h;
    const double fm = kl_at(s, w, th, tgt);
    th[i] = x0;
    const double fd = (fp - fm) / (2 * h);
    num = std::max(num, std::abs(g.grads.back()[i] - fd));
    den = std::max(den, std::abs(fd));
  }
  out.theta_rel = num / den;
  return out;
}

}  // namespace qcnet::testing
