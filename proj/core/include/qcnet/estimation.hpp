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
#include <optional>
#include <variant>
#include <vector>

#include "qcnet/adam.hpp"
#include "qcnet/circuit.hpp"
#include "qcnet/surrogate.hpp"

namespace qcnet {

/// Exact circuit model: initial state and fixed unitary U0.
struct ExactModel {
  TwoPhotonState state;
  ModeUnitary u0;
  int n_ps = 6;
};

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

/// KL(coincidence(evolve(state, u0, theta)) || target) and its analytic
/// gradient over the n_ps phases. `target` is lower-triangular.
LossGrad exact_grad_theta(const TwoPhotonState& state, const ModeUnitary& u0, const PhaseVector& theta,
                          const RealMatrix& target, double floor);

/// Smallest period of the exact map theta -> probabilities that holds for
/// every component: pi for diagonal (NOON-type) states, 2 pi otherwise.
double phase_period(const TwoPhotonState& state);

/// Difference wrapped into (-period/2, period/2].
double wrap_residual(double diff, double period);

using Observation = std::variant<CoincidenceMatrix, EmpiricalCounts>;

/// Model plus observation: the objective of phase recovery.
class EstimationProblem {
 public:
  EstimationProblem(ExactModel model, const Observation& observed);
  EstimationProblem(Surrogate model, const Observation& observed);

  int n_ps() const { return n_ps_; }
  double floor() const { return floor_; }
  void set_floor(double floor);
  /// Period used when wrapping residuals.
  double period() const { return period_; }
  const RealMatrix& target() const { return target_; }

  LossGrad evaluate(const std::vector<double>& theta) const;

 private:
  std::variant<ExactModel, Surrogate> model_;
  RealMatrix target_;
  double floor_ = 1e-9;
  double period_ = 0.0;
  int n_ps_ = 0;
};

struct EstimationOptions {
  AdamConfig adam{};
  int iterations = 2000;
  int restarts = 4;
  std::uint64_t seed = 0;
  /// Starting point of the first restart; later restarts draw uniformly.
  std::optional<PhaseVector> init;
  /// Ground truth, when known, for residuals.
  std::optional<PhaseVector> truth;
  unsigned threads = 0;
};

struct EstimationTrace {
  std::vector<std::vector<double>> thetas;  // theta(k), k = 0..iterations
  std::vector<double> losses;               // loss at theta(k)
  PhaseVector final_theta;                  // wrapped to [0, 2 pi)
  double final_loss = 0.0;
  std::vector<double> residuals;            // final, if truth known
  int restart = 0;                          // index of the kept restart

  /// Residuals of iterate k against `truth`, wrapped by `period`.
  std::vector<double> residuals_at(std::size_t k, const PhaseVector& truth, double period) const;
};

/// Adam on theta only; the restart with the lowest final KL is kept.
EstimationTrace estimate(const EstimationProblem& problem, const EstimationOptions& options);

struct BatchSummary {
  /// mean[k][i] / sd[k][i]: residual of component i at iteration k across trials.
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> sd;
  std::vector<double> final_losses;
  std::vector<std::vector<double>> final_residuals;  // per trial

  /// Component-averaged SD at the last iteration.
  double final_sd() const;
  /// Mean |residual| over trials and components at the last iteration.
  double final_mean_abs() const;
};

/// Runs `n_trials` estimations against independent p-sample observations
/// of the exact distribution at `truth` (p == 0 uses the exact distribution).
BatchSummary batch_estimate(const ExactModel& model, const PhaseVector& truth, std::uint64_t p, int n_trials,
                            const EstimationOptions& options);

/// Summary of a set of traces sharing one truth.
BatchSummary summarize(const std::vector<EstimationTrace>& traces, const PhaseVector& truth, double period);

}  // namespace qcnet
