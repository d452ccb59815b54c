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

#include "qcnet/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "qcnet/error.hpp"
#include "qcnet/parallel.hpp"
#include "qcnet/random.hpp"
#include "qcnet/trainer.hpp"

namespace qcnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

LossGrad exact_grad_theta(const TwoPhotonState& state, const ModeUnitary& u0, const PhaseVector& theta,
                          const RealMatrix& target, double floor) {
  const int d = state.d();
  const auto n = static_cast<int>(theta.size());
  if (target.rows() != d || target.cols() != d) throw NumericError("exact_grad_theta: target dimension mismatch");
  if (!(floor > 0.0)) throw ConfigError("exact_grad_theta: floor must be positive");

  // Same path as the forward model so that a self-generated target is met
  // bit-for-bit and the gradient there is exactly zero.
  const TwoPhotonState out = evolve(state, u0, theta);
  const CoincidenceMatrix probs = coincidence(out);
  const ComplexMatrix& psi = out.amplitudes();

  LossGrad r;
  r.loss = kl_loss(probs.probs(), target, floor);
  if (!std::isfinite(r.loss)) throw NumericError("exact model: non-finite loss");

  // dL/d|psi_ij|^2 = w_ij log(P_ij / t_ij); the "+1" of d(p log p) sums to the
  // derivative of the conserved total probability and is dropped.
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double p = probs(i, j);
      if (p <= 0.0) continue;
      const double w = (i == j) ? 1.0 : 2.0;
      const double g = w * std::log(p / std::max(target(i, j), floor));
      h(i, j) = 2.0 * g * std::conj(psi(i, j));
    }
  }
  // Phi = D Psi D, psi_out = U0 Phi U0^T; dPhi/dtheta_k = i (E_k Phi + Phi E_k).
  ComplexMatrix phi = state.amplitudes();
  for (int k = 0; k < n; ++k) {
    const Complex e = std::polar(1.0, theta[k]);
    phi.row(k) *= e;
    phi.col(k) *= e;
  }
  const ComplexMatrix& u = u0.matrix();
  const ComplexMatrix kmat = u.transpose() * h * u;
  r.grad.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    const Complex s = phi.row(k).cwiseProduct(kmat.row(k)).sum() + phi.col(k).cwiseProduct(kmat.col(k)).sum();
    r.grad[static_cast<std::size_t>(k)] = -s.imag();
  }
  return r;
}

double phase_period(const TwoPhotonState& state) { return is_diagonal(state) ? std::numbers::pi : kTwoPi; }

double wrap_residual(double diff, double period) {
  double r = std::fmod(diff, period);
  if (r > 0.5 * period) r -= period;
  if (r <= -0.5 * period) r += period;
  return r;
}

namespace {

std::pair<RealMatrix, double> target_of(const Observation& obs) {
  if (const auto* pm = std::get_if<CoincidenceMatrix>(&obs)) return {pm->probs(), 1e-9};
  const auto& counts = std::get<EmpiricalCounts>(obs);
  return {counts.normalized(), 1.0 / (10.0 * static_cast<double>(counts.p()))};
}

}  // namespace

EstimationProblem::EstimationProblem(ExactModel model, const Observation& observed) : model_(std::move(model)) {
  const auto& m = std::get<ExactModel>(model_);
  std::tie(target_, floor_) = target_of(observed);
  if (target_.rows() != m.state.d() || m.u0.d() != m.state.d()) {
    throw ConfigError("observation dimension does not match the exact model");
  }
  ModeDim(m.state.d(), m.n_ps);
  n_ps_ = m.n_ps;
  period_ = phase_period(m.state);
}

EstimationProblem::EstimationProblem(Surrogate model, const Observation& observed) : model_(std::move(model)) {
  const auto& m = std::get<Surrogate>(model_);
  std::tie(target_, floor_) = target_of(observed);
  if (target_.rows() != m.dim().d()) throw ConfigError("observation dimension does not match the surrogate");
  n_ps_ = m.dim().n_ps();
  period_ = kTwoPi;
}

void EstimationProblem::set_floor(double floor) {
  if (!(floor > 0.0)) throw ConfigError("floor must be positive");
  floor_ = floor;
}

LossGrad EstimationProblem::evaluate(const std::vector<double>& theta) const {
  if (theta.size() != static_cast<std::size_t>(n_ps_)) throw NumericError("phase vector length mismatch");
  if (const auto* m = std::get_if<ExactModel>(&model_)) {
    return exact_grad_theta(m->state, m->u0, PhaseVector(theta), target_, floor_);
  }
  const auto& model = std::get<Surrogate>(model_);
  Tape tape;
  std::vector<Var> w;
  for (const Tensor& p : model.params()) w.push_back(tape.constant_ref(p));
  const Var t = tape.variable(Tensor::vector(theta));
  const Var probs = model.forward(tape, w, t);
  const Var loss = ad::kl_divergence(probs, to_tensor(target_), floor_);
  tape.backward(loss);
  LossGrad r;
  r.loss = loss.value().item();
  r.grad = tape.grad(t).storage();
  return r;
}

std::vector<double> EstimationTrace::residuals_at(std::size_t k, const PhaseVector& truth, double period) const {
  const auto& th = thetas.at(k);
  if (th.size() != truth.size()) throw NumericError("residuals: length mismatch");
  std::vector<double> r(th.size());
  for (std::size_t i = 0; i < th.size(); ++i) r[i] = wrap_residual(th[i] - truth[i], period);
  return r;
}

EstimationTrace estimate(const EstimationProblem& problem, const EstimationOptions& options) {
  if (options.iterations < 0) throw ConfigError("iterations: must be >= 0");
  if (options.restarts < 1) throw ConfigError("restarts: must be >= 1");
  const auto n = static_cast<std::size_t>(problem.n_ps());
  if (options.init && options.init->size() != n) throw ConfigError("init: wrong number of phases");
  if (options.truth && options.truth->size() != n) throw ConfigError("truth: wrong number of phases");

  const auto restarts = static_cast<std::size_t>(options.restarts);
  std::vector<std::optional<EstimationTrace>> runs(restarts);
  parallel_for(restarts, options.threads, [&](std::size_t r) {
    std::vector<double> theta(n);
    if (r == 0 && options.init) {
      theta = options.init->values();
    } else {
      Xoshiro256 rng(derive_seed(options.seed, r));
      for (double& t : theta) t = rng.uniform(0.0, kTwoPi);
    }
    Adam adam(options.adam, n);
    EstimationTrace trace;
    trace.restart = static_cast<int>(r);
    trace.thetas.reserve(static_cast<std::size_t>(options.iterations) + 1);
    trace.losses.reserve(static_cast<std::size_t>(options.iterations) + 1);
    for (int k = 0;; ++k) {
      LossGrad lg;
      try {
        lg = problem.evaluate(theta);
      } catch (const NumericError&) {
        return;  // this restart is discarded
      }
      if (!std::isfinite(lg.loss)) return;
      trace.thetas.push_back(theta);
      trace.losses.push_back(lg.loss);
      if (k == options.iterations) break;
      adam.step(theta, lg.grad);
    }
    trace.final_loss = trace.losses.back();
    runs[r] = std::move(trace);
  });

  std::optional<EstimationTrace> best;
  for (auto& run : runs) {
    if (run && (!best || run->final_loss < best->final_loss)) best = std::move(run);
  }
  if (!best) throw NumericError("estimation budget exhausted without a finite loss");
  best->final_theta = PhaseVector(best->thetas.back()).canonical();
  if (options.truth) best->residuals = best->residuals_at(best->thetas.size() - 1, *options.truth, problem.period());
  return std::move(*best);
}

double BatchSummary::final_sd() const {
  if (sd.empty()) return 0.0;
  const auto& last = sd.back();
  return std::accumulate(last.begin(), last.end(), 0.0) / static_cast<double>(last.size());
}

double BatchSummary::final_mean_abs() const {
  double s = 0.0;
  std::size_t count = 0;
  for (const auto& r : final_residuals) {
    for (double x : r) {
      s += std::abs(x);
      ++count;
    }
  }
  return count ? s / static_cast<double>(count) : 0.0;
}

BatchSummary summarize(const std::vector<EstimationTrace>& traces, const PhaseVector& truth, double period) {
  if (traces.empty()) throw ConfigError("summarize: no traces");
  std::size_t iters = traces.front().thetas.size();
  for (const auto& t : traces) iters = std::min(iters, t.thetas.size());
  const std::size_t n = truth.size();
  const double count = static_cast<double>(traces.size());
  BatchSummary s;
  s.mean.assign(iters, std::vector<double>(n, 0.0));
  s.sd.assign(iters, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < iters; ++k) {
    std::vector<std::vector<double>> res;
    res.reserve(traces.size());
    for (const auto& t : traces) res.push_back(t.residuals_at(k, truth, period));
    for (std::size_t i = 0; i < n; ++i) {
      double m = 0.0;
      for (const auto& r : res) m += r[i];
      m /= count;
      double ss = 0.0;
      for (const auto& r : res) ss += (r[i] - m) * (r[i] - m);
      s.mean[k][i] = m;
      s.sd[k][i] = traces.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
    }
  }
  for (const auto& t : traces) {
    s.final_losses.push_back(t.final_loss);
    s.final_residuals.push_back(t.residuals_at(iters - 1, truth, period));
  }
  return s;
}

BatchSummary batch_estimate(const ExactModel& model, const PhaseVector& truth, std::uint64_t p, int n_trials,
                            const EstimationOptions& options) {
  if (n_trials < 1) throw ConfigError("n_trials: must be >= 1");
  const CoincidenceMatrix exact = coincidence(evolve(model.state, model.u0, truth));
  const double period = phase_period(model.state);
  std::vector<std::optional<EstimationTrace>> traces(static_cast<std::size_t>(n_trials));
  parallel_for(traces.size(), options.threads, [&](std::size_t t) {
    const Observation obs = p == 0 ? Observation(exact) : Observation(sample(exact, p, derive_seed(options.seed, t)));
    EstimationProblem problem(model, obs);
    EstimationOptions trial = options;
    trial.seed = derive_seed(~options.seed, t);
    trial.truth = truth;
    trial.threads = 1;
    traces[t] = estimate(problem, trial);
  });
  std::vector<EstimationTrace> done;
  done.reserve(traces.size());
  for (auto& t : traces) done.push_back(std::move(*t));
  return summarize(done, truth, period);
}

}  // namespace qcnet
