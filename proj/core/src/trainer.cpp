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

#include "qcnet/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcnet/error.hpp"
#include "qcnet/parallel.hpp"
#include "qcnet/random.hpp"

namespace qcnet {

double kl_loss(const RealMatrix& pred, const RealMatrix& target, double floor) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) throw NumericError("kl_loss: shape mismatch");
  if (!(floor > 0.0)) throw ConfigError("kl_loss: floor must be positive");
  double s = 0.0;
  for (Eigen::Index i = 0; i < pred.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double p = pred(i, j);
      if (p < 0.0) throw NumericError("kl_loss: prediction has negative entries");
      if (p > 0.0) s += p * std::log(p / std::max(target(i, j), floor));
    }
  }
  return s;
}

double kl_loss(const CoincidenceMatrix& pred, const CoincidenceMatrix& target, double floor) {
  return kl_loss(pred.probs(), target.probs(), floor);
}

double kl_loss(const CoincidenceMatrix& pred, const EmpiricalCounts& target, double floor) {
  if (pred.d() != target.d()) throw NumericError("kl_loss: dimension mismatch");
  return kl_loss(pred.probs(), target.normalized(), floor);
}

double cell_mae(const CoincidenceMatrix& pred, const CoincidenceMatrix& target) {
  if (pred.d() != target.d()) throw NumericError("cell_mae: dimension mismatch");
  const int d = pred.d();
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) s += std::abs(pred(i, j) - target(i, j));
  }
  return s / (d * (d + 1) / 2.0);
}

void TrainConfig::validate() const {
  if (batch < 1) throw ConfigError("batch: must be >= 1");
  if (!(learning_rate >= 0.0)) throw ConfigError("learning_rate: must be >= 0");
  if (epochs < 0) throw ConfigError("epochs: must be >= 0");
  if (!(split > 0.0 && split < 1.0)) throw ConfigError("split: must lie strictly between 0 and 1");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("beta1/beta2: must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon: must be positive");
}

namespace {

struct RecordGrad {
  double loss = 0.0;
  std::vector<Tensor> grads;
};

RecordGrad record_gradient(const Surrogate& model, const Record& rec, double floor) {
  Tape tape;
  std::vector<Var> w;
  w.reserve(model.params().size());
  for (const Tensor& p : model.params()) w.push_back(tape.variable_ref(p));
  const Var theta = tape.constant(Tensor::vector(rec.theta.values()));
  const Var probs = model.forward(tape, w, theta);
  const Var loss = ad::kl_divergence(probs, to_tensor(rec.target.probs()), floor);
  tape.backward(loss);
  RecordGrad out;
  out.loss = loss.value().item();
  for (const Var& v : w) out.grads.push_back(tape.grad(v));
  return out;
}

}  // namespace

double mean_kl(const Surrogate& model, const std::vector<Record>& records, double floor, unsigned threads) {
  if (records.empty()) return 0.0;
  std::vector<double> losses(records.size());
  parallel_for(records.size(), threads, [&](std::size_t k) {
    losses[k] = kl_loss(model.predict(records[k].theta), records[k].target, floor);
  });
  return std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(records.size());
}

TrainResult train(Surrogate model, const Dataset& data, const TrainConfig& cfg) {
  cfg.validate();
  if (!(model.dim() == data.dim())) {
    throw ConfigError("model dimensions (d=" + std::to_string(model.dim().d()) + ", n_ps=" +
                      std::to_string(model.dim().n_ps()) + ") do not match the dataset");
  }
  const std::size_t n_train = data.train_size(cfg.split);
  const std::vector<Record> train_set(data.records.begin(), data.records.begin() + static_cast<std::ptrdiff_t>(n_train));
  const std::vector<Record> val_set(data.records.begin() + static_cast<std::ptrdiff_t>(n_train), data.records.end());
  const double floor = data.kl_floor();
  const unsigned threads = cfg.threads == 0 ? default_threads() : cfg.threads;

  const AdamConfig adam_cfg{cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon};
  AdamState adam = AdamState::like(model.params());
  TrainMetrics metrics;

  std::vector<std::size_t> order(n_train);
  std::vector<Tensor> accum;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Xoshiro256 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = n_train; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < n_train; start += cfg.batch) {
      const std::size_t end = std::min(n_train, start + cfg.batch);
      const std::size_t count = end - start;
      accum.clear();
      for (const Tensor& p : model.params()) accum.emplace_back(p.shape(), 0.0);
      double batch_loss = 0.0;
      // Waves of `threads` records; slots are folded into the sum in record order.
      for (std::size_t wave = start; wave < end; wave += threads) {
        const std::size_t wave_end = std::min(end, wave + threads);
        std::vector<RecordGrad> slots(wave_end - wave);
        try {
          parallel_for(slots.size(), threads, [&](std::size_t k) {
            slots[k] = record_gradient(model, train_set[order[wave + k]], floor);
          });
        } catch (const NumericError& e) {
          throw NumericError("training diverged at epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batches) + ": " + e.what());
        }
        for (const RecordGrad& g : slots) {
          batch_loss += g.loss;
          for (std::size_t t = 0; t < accum.size(); ++t) {
            auto dst = accum[t].data();
            auto src = g.grads[t].data();
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
          }
        }
      }
      batch_loss /= static_cast<double>(count);
      if (!std::isfinite(batch_loss)) {
        throw NumericError("training diverged at epoch " + std::to_string(epoch) + ", batch " +
                           std::to_string(batches) + ": non-finite loss");
      }
      const double inv = 1.0 / static_cast<double>(count);
      for (Tensor& t : accum) {
        for (double& v : t.data()) v *= inv;
      }
      adam_step(adam_cfg, adam, model.params(), accum);
      epoch_loss += batch_loss;
      ++batches;
    }
    metrics.train_loss.push_back(batches ? epoch_loss / static_cast<double>(batches) : 0.0);
    double val = 0.0;
    try {
      val = mean_kl(model, val_set, floor, threads);
    } catch (const NumericError& e) {
      throw NumericError("validation failed after epoch " + std::to_string(epoch) + ": " + e.what());
    }
    metrics.val_loss.push_back(val);
  }

  metrics.val_mae.resize(val_set.size());
  parallel_for(val_set.size(), threads, [&](std::size_t k) {
    metrics.val_mae[k] = cell_mae(model.predict(val_set[k].theta), val_set[k].target);
  });
  metrics.mean_val_mae = metrics.val_mae.empty()
                             ? 0.0
                             : std::accumulate(metrics.val_mae.begin(), metrics.val_mae.end(), 0.0) /
                                   static_cast<double>(metrics.val_mae.size());
  return {std::move(model), std::move(adam), std::move(metrics)};
}

}  // namespace qcnet
