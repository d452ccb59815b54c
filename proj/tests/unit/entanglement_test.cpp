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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qcnet/circuit.hpp"
#include "qcnet/entanglement.hpp"
#include "qcnet/error.hpp"

namespace qcnet {
namespace {

TEST(Schmidt, ProductState) {
  Xoshiro256 rng(1);
  const ComplexMatrix v = testing::random_complex(6, 1, rng);
  const auto spec = schmidt(TwoPhotonState((v * v.transpose()) / (v * v.transpose()).norm()));
  EXPECT_NEAR(spec.lambdas()[0], 1.0, 1e-12);
  for (std::size_t k = 1; k < spec.lambdas().size(); ++k) EXPECT_LT(spec.lambdas()[k], 1e-12);
  for (double n : {0.0, 0.5, 1.0, 2.0, 5.0}) EXPECT_NEAR(renyi(spec, n), 0.0, 1e-12);
}

TEST(Schmidt, NoonFlat) {
  for (int d : {2, 7, 16}) {
    const auto spec = schmidt(build_initial_state(Noon{}, ModeDim(d, 1)));
    for (double l : spec.lambdas()) EXPECT_NEAR(l, 1.0 / std::sqrt(d), 1e-12);
    for (double n : {0.0, 0.5, 1.0, 2.0, 3.0}) EXPECT_NEAR(renyi(spec, n), std::log(d), 1e-12);
    EXPECT_EQ(spec.rank_at(0.9), static_cast<int>(std::ceil(0.9 * d - 1e-12)));
  }
}

TEST(Schmidt, WeakCoherentRankTwoEntropy) {
  for (int d : {8, 16, 64}) {
    const auto spec = schmidt(build_initial_state(WeakCoherent{}, ModeDim(d, 6)));
    EXPECT_NEAR(renyi(spec, 0.0), std::log(2.0), 1e-15);
    EXPECT_NEAR(spec.top_weight(2), 1.0, 1e-12);
  }
}

TEST(Schmidt, SingularValuesMatchEigenOfGram) {
  Xoshiro256 rng(2);
  const auto s = symmetrize(testing::random_complex(9, 9, rng));
  const auto spec = schmidt(s);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s.amplitudes().adjoint() * s.amplitudes());
  const auto& ev = es.eigenvalues();  // ascending
  for (int k = 0; k < 9; ++k) EXPECT_NEAR(spec.lambdas()[static_cast<std::size_t>(k)], std::sqrt(std::max(0.0, ev(8 - k))), 1e-12);
}

TEST(Schmidt, WeightsSumToOneAfterEvolution) {
  Xoshiro256 rng(3);
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + static_cast<int>(rng.below(20));
    const auto s = symmetrize(testing::random_complex(d, d, rng));
    const auto spec = schmidt(evolve(s, haar_unitary(ModeDim(d, 1), rng()), PhaseVector({rng.uniform()})));
    double total = 0.0;
    for (double w : spec.weights()) total += w;
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(Schmidt, RankMonotoneInQ) {
  Xoshiro256 rng(4);
  const auto spec = schmidt(symmetrize(testing::random_complex(12, 12, rng)));
  int prev = 0;
  for (double q = 0.05; q <= 1.0; q += 0.05) {
    const int r = spec.rank_at(q);
    EXPECT_GE(r, prev);
    prev = r;
  }
}

TEST(Renyi, ShannonLimitAndErrors) {
  const SchmidtSpectrum spec({std::sqrt(0.7), std::sqrt(0.2), std::sqrt(0.1)});
  const double shannon = -(0.7 * std::log(0.7) + 0.2 * std::log(0.2) + 0.1 * std::log(0.1));
  EXPECT_NEAR(renyi(spec, 1.0), shannon, 1e-14);
  EXPECT_NEAR(renyi(spec, 1.0 + 1e-7), shannon, 1e-6);
  EXPECT_NEAR(renyi(spec, 2.0), -std::log(0.49 + 0.04 + 0.01), 1e-14);
  EXPECT_THROW(SchmidtSpectrum({0.5, 0.9}), NumericError);
  EXPECT_THROW(SchmidtSpectrum({0.0, 0.0}), NumericError);
}

TEST(RankStats, NoonExact) {
  const auto rows = rank_stats(Noon{}, {8, 10}, 5, 0.9, 1, 6, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].d, 8);
  EXPECT_NEAR(rows[0].mean_rank_q, 8.0, 0.0);  // ceil(7.2)
  EXPECT_NEAR(rows[1].mean_rank_q, 9.0, 0.0);
  EXPECT_NEAR(rows[0].sd_rank_q, 0.0, 0.0);
  EXPECT_NEAR(rows[0].mean_top2, 0.25, 1e-12);
}

TEST(RankStats, ThreadCountIndependent) {
  const auto a = rank_stats(WeakCoherent{}, {8, 12}, 20, 0.9, 5, 6, 1);
  const auto b = rank_stats(WeakCoherent{}, {8, 12}, 20, 0.9, 5, 6, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_top2, b[i].mean_top2);
    EXPECT_EQ(a[i].mean_rank_q, b[i].mean_rank_q);
  }
}

}  // namespace
}  // namespace qcnet
