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

#include "qcnet/fock.hpp"

namespace qcnet {

/// Singular values of a two-photon amplitude matrix, nonincreasing.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> lambdas);

  const std::vector<double>& lambdas() const { return lambdas_; }
  /// lambda_k = Lambda_k^2, the reduced-density eigenvalues.
  std::vector<double> weights() const;
  /// Sum of the leading `k` weights.
  double top_weight(std::size_t k) const;
  /// Smallest r with sum_{k<=r} Lambda_k^2 >= q.
  int rank_at(double q) const;

 private:
  std::vector<double> lambdas_;
};

inline constexpr double kRankEpsilon = 1e-10;

SchmidtSpectrum schmidt(const TwoPhotonState& state);

/// Renyi entropy of order n (natural log). n == 1 is the Shannon limit and
/// n == 0 counts weights above `eps`.
double renyi(const SchmidtSpectrum& spec, double n, double eps = kRankEpsilon);

struct RankStatsRow {
  int d = 0;
  double mean_top2 = 0.0;
  double sd_top2 = 0.0;
  double mean_rank_q = 0.0;
  double sd_rank_q = 0.0;
};

/// For each d, evolve the initial state through `n_haar` independent Haar
/// unitaries with random phases and report mean/sd of the top-two Schmidt
/// weight and of Rank_q. Draw k uses seeds derived from (seed, d, k).
std::vector<RankStatsRow> rank_stats(const InitialStateKind& kind, const std::vector<int>& dims,
                                     int n_haar, double q, std::uint64_t seed, int n_ps = 6,
                                     unsigned threads = 0);

}  // namespace qcnet
