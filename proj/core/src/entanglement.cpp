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

#include "qcnet/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "qcnet/circuit.hpp"
#include "qcnet/error.hpp"
#include "qcnet/parallel.hpp"
#include "qcnet/random.hpp"

namespace qcnet {

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw NumericError("empty Schmidt spectrum");
  double total = 0.0;
  for (std::size_t k = 0; k < lambdas_.size(); ++k) {
    if (!(lambdas_[k] >= 0.0)) throw NumericError("Schmidt coefficients must be non-negative");
    if (k > 0 && lambdas_[k] > lambdas_[k - 1]) throw NumericError("Schmidt coefficients must be sorted");
    total += lambdas_[k] * lambdas_[k];
  }
  if (std::abs(total - 1.0) > 1e-10) throw NumericError("Schmidt weights do not sum to 1");
}

std::vector<double> SchmidtSpectrum::weights() const {
  std::vector<double> w(lambdas_.size());
  std::transform(lambdas_.begin(), lambdas_.end(), w.begin(), [](double l) { return l * l; });
  return w;
}

double SchmidtSpectrum::top_weight(std::size_t k) const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(k, lambdas_.size()); ++i) s += lambdas_[i] * lambdas_[i];
  return s;
}

int SchmidtSpectrum::rank_at(double q) const {
  double s = 0.0;
  for (std::size_t r = 0; r < lambdas_.size(); ++r) {
    s += lambdas_[r] * lambdas_[r];
    // Rounding slack so a flat spectrum hits exact fractions like 0.9 * d.
    if (s >= q - 1e-12) return static_cast<int>(r + 1);
  }
  return static_cast<int>(lambdas_.size());
}

SchmidtSpectrum schmidt(const TwoPhotonState& state) {
  Eigen::BDCSVD<ComplexMatrix> svd(state.amplitudes());
  if (svd.info() != Eigen::Success) throw NumericError("SVD did not converge");
  const RealVector& s = svd.singularValues();
  std::vector<double> lambdas(s.data(), s.data() + s.size());
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  // Absorb the ~1e-16 norm drift of the decomposition.
  const double norm = std::sqrt(std::inner_product(lambdas.begin(), lambdas.end(), lambdas.begin(), 0.0));
  for (double& l : lambdas) l /= norm;
  return SchmidtSpectrum(std::move(lambdas));
}

double renyi(const SchmidtSpectrum& spec, double n, double eps) {
  if (n < 0.0) throw ConfigError("Renyi order must be >= 0");
  const auto w = spec.weights();
  if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) {
    throw NumericError("all-zero Schmidt spectrum");
  }
  if (n == 0.0) {
    const auto rank = std::count_if(w.begin(), w.end(), [eps](double x) { return x > eps; });
    return std::log(static_cast<double>(rank));
  }
  if (n == 1.0) {
    double h = 0.0;
    for (double x : w) {
      if (x > 0.0) h -= x * std::log(x);
    }
    return h;
  }
  double s = 0.0;
  for (double x : w) {
    if (x > 0.0) s += std::pow(x, n);
  }
  return std::log(s) / (1.0 - n);
}

namespace {

std::pair<double, double> mean_sd(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

std::vector<RankStatsRow> rank_stats(const InitialStateKind& kind, const std::vector<int>& dims,
                                     int n_haar, double q, std::uint64_t seed, int n_ps,
                                     unsigned threads) {
  if (n_haar < 1) throw ConfigError("rank_stats needs n_haar >= 1");
  std::vector<RankStatsRow> rows;
  for (int d : dims) {
    const ModeDim dim(d, std::min(n_ps, d));
    const TwoPhotonState initial = build_initial_state(kind, dim);
    std::vector<double> top2(static_cast<std::size_t>(n_haar));
    std::vector<double> ranks(static_cast<std::size_t>(n_haar));
    const std::uint64_t dim_seed = derive_seed(seed, static_cast<std::uint64_t>(d));
    parallel_for(static_cast<std::size_t>(n_haar), threads, [&](std::size_t k) {
      const std::uint64_t draw_seed = derive_seed(dim_seed, k);
      const ModeUnitary u0 = haar_unitary(dim, draw_seed);
      Xoshiro256 rng(derive_seed(draw_seed, 0x7468657461ULL));
      std::vector<double> theta(static_cast<std::size_t>(dim.n_ps()));
      for (double& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const SchmidtSpectrum spec = schmidt(evolve(initial, u0, PhaseVector(std::move(theta))));
      top2[k] = spec.top_weight(2);
      ranks[k] = spec.rank_at(q);
    });
    RankStatsRow row;
    row.d = d;
    std::tie(row.mean_top2, row.sd_top2) = mean_sd(top2);
    std::tie(row.mean_rank_q, row.sd_rank_q) = mean_sd(ranks);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qcnet
