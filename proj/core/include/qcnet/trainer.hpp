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
#include <vector>

#include "qcnet/adam.hpp"
#include "qcnet/dataset.hpp"
#include "qcnet/surrogate.hpp"

namespace qcnet {

/// Forward KL over the lower triangle: sum pred * log(pred / max(target, floor)),
/// with pred == 0 cells contributing 0.
double kl_loss(const CoincidenceMatrix& pred, const CoincidenceMatrix& target, double floor);
double kl_loss(const CoincidenceMatrix& pred, const EmpiricalCounts& target, double floor);
double kl_loss(const RealMatrix& pred, const RealMatrix& target, double floor);

/// Mean absolute error over the d(d+1)/2 lower-triangle cells.
double cell_mae(const CoincidenceMatrix& pred, const CoincidenceMatrix& target);

struct TrainConfig {
  std::size_t batch = 32;
  double learning_rate = 0.1;
  int epochs = 200;
  std::uint64_t seed = 0;
  double split = 0.7;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  unsigned threads = 0;

  void validate() const;
};

struct TrainMetrics {
  std::vector<double> train_loss;  // mean batch KL per epoch
  std::vector<double> val_loss;    // mean validation KL after each epoch
  std::vector<double> val_mae;     // per validation record, after training
  double mean_val_mae = 0.0;
};

struct TrainResult {
  Surrogate model;
  AdamState adam;
  TrainMetrics metrics;
};

/// Mean KL over `records` at the current weights.
double mean_kl(const Surrogate& model, const std::vector<Record>& records, double floor, unsigned threads = 0);

/// Mini-batch Adam on the mean batch KL. Epoch e shuffles the training split
/// with a seed derived from (seed, e); per-record gradients are summed in
/// record order, so results do not depend on the thread count.
/// Throws NumericError naming the epoch and batch if a loss is not finite.
TrainResult train(Surrogate model, const Dataset& data, const TrainConfig& cfg);

}  // namespace qcnet
