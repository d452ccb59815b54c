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

#include <benchmark/benchmark.h>

#include <vector>

#include "qcnet/circuit.hpp"
#include "qcnet/estimation.hpp"
#include "qcnet/permanent.hpp"
#include "qcnet/random.hpp"
#include "qcnet/surrogate.hpp"
#include "qcnet/tape.hpp"

namespace qcnet {
namespace {

PhaseVector phases(int n, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<double> t(static_cast<std::size_t>(n));
  for (double& x : t) x = rng.uniform(0.0, 6.28);
  return PhaseVector(t);
}

void BM_HaarUnitary(benchmark::State& state) {
  const ModeDim dim(static_cast<int>(state.range(0)), 6);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(dim, ++seed));
}
BENCHMARK(BM_HaarUnitary)->Arg(8)->Arg(16)->Arg(64);

void BM_Evolve(benchmark::State& state) {
  const ModeDim dim(static_cast<int>(state.range(0)), 6);
  const TwoPhotonState s = build_initial_state(WeakCoherent{}, dim);
  const ModeUnitary u = haar_unitary(dim, 1);
  const PhaseVector th = phases(6, 2);
  for (auto _ : state) benchmark::DoNotOptimize(coincidence(evolve(s, u, th)));
}
BENCHMARK(BM_Evolve)->Arg(8)->Arg(16)->Arg(64);

void BM_ExactGradient(benchmark::State& state) {
  const ModeDim dim(static_cast<int>(state.range(0)), 6);
  const TwoPhotonState s = build_initial_state(Noon{}, dim);
  const ModeUnitary u = haar_unitary(dim, 1);
  const RealMatrix target = coincidence(evolve(s, u, phases(6, 3))).probs();
  const PhaseVector th = phases(6, 4);
  for (auto _ : state) benchmark::DoNotOptimize(exact_grad_theta(s, u, th, target, 1e-9));
}
BENCHMARK(BM_ExactGradient)->Arg(16)->Arg(64);

void surrogate_step(benchmark::State& state, Architecture arch, int width) {
  const int d = static_cast<int>(state.range(0));
  const Surrogate s = Surrogate::create(arch, ModeDim(d, 6), width, 1000.0, 5);
  const Tensor target = to_tensor(s.predict(phases(6, 6)).probs());
  std::vector<Tensor> at = s.params();
  at.push_back(Tensor::vector(phases(6, 7).values()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient(
        [&](Tape&, std::span<const Var> v) {
          return ad::kl_divergence(s.forward(v[0].tape(), v.first(v.size() - 1), v.back()), target, 1e-9);
        },
        at));
  }
}

void BM_QcnnForwardBackward(benchmark::State& state) { surrogate_step(state, Architecture::Qcnn, 100); }
BENCHMARK(BM_QcnnForwardBackward)->Arg(8)->Arg(16)->Arg(64);

void BM_QctnForwardBackward(benchmark::State& state) { surrogate_step(state, Architecture::Qctn, 10); }
BENCHMARK(BM_QctnForwardBackward)->Arg(8)->Arg(16)->Arg(64);

void BM_PermanentRyser(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix m = haar_unitary(ModeDim(n, 1), 8).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(m));
}
BENCHMARK(BM_PermanentRyser)->DenseRange(4, 16, 4);

}  // namespace
}  // namespace qcnet

BENCHMARK_MAIN();
