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

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "qcnet/error.hpp"
#include "qcnet/permanent.hpp"

namespace qcnet {
namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TEST(Permanent, ClosedForms) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), Complex(3, -1), Complex(0.5, 0), Complex(-2, 1);
  const Complex want = m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
  EXPECT_LT(rel(permanent_naive(m), want), 1e-15);
  EXPECT_LT(rel(permanent_ryser(m), want), 1e-15);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(permanent_naive(ComplexMatrix::Identity(n, n)), Complex(1.0));
    EXPECT_NEAR(std::abs(permanent_ryser(ComplexMatrix::Identity(n, n)) - 1.0), 0.0, 1e-14);
  }
  EXPECT_EQ(permanent_naive(ComplexMatrix::Ones(3, 3)), Complex(6.0));
  EXPECT_NEAR(std::abs(permanent_ryser(ComplexMatrix::Ones(4, 4)) - 24.0), 0.0, 1e-12);
}

TEST(Permanent, RowOfZeros) {
  Xoshiro256 rng(1);
  ComplexMatrix m = testing::random_complex(5, 5, rng);
  m.row(2).setZero();
  EXPECT_EQ(permanent_ryser(m), Complex(0.0));
}

TEST(Permanent, RyserMatchesNaive) {
  Xoshiro256 rng(2);
  for (int n = 1; n <= 7; ++n) {
    for (int t = 0; t < 10; ++t) {
      const ComplexMatrix m = testing::random_complex(n, n, rng);
      EXPECT_LT(rel(permanent_ryser(m), permanent_naive(m)), 1e-10) << n;
    }
  }
}

TEST(Permanent, NaiveGuard) {
  EXPECT_THROW(permanent_naive(ComplexMatrix::Identity(10, 10)), ConfigError);
  EXPECT_THROW(permanent_ryser(ComplexMatrix::Identity(2, 3)), ConfigError);
  EXPECT_NEAR(std::abs(permanent_ryser(ComplexMatrix::Identity(12, 12)) - 1.0), 0.0, 1e-12);
}

TEST(Permanent, InvariantUnderPermutations) {
  Xoshiro256 rng(3);
  for (int t = 0; t < 10; ++t) {
    const int n = 5;
    const ComplexMatrix m = testing::random_complex(n, n, rng);
    std::vector<int> p(n), q(n);
    std::iota(p.begin(), p.end(), 0);
    std::iota(q.begin(), q.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::shuffle(q.begin(), q.end(), rng);
    ComplexMatrix pm(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) pm(i, j) = m(p[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)]);
    }
    EXPECT_LT(rel(permanent_ryser(pm), permanent_ryser(m)), 1e-12);
  }
}

TEST(Permanent, MultilinearInRows) {
  Xoshiro256 rng(4);
  const ComplexMatrix base = testing::random_complex(4, 4, rng);
  const ComplexMatrix r1 = testing::random_complex(1, 4, rng), r2 = testing::random_complex(1, 4, rng);
  const Complex a(0.3, -1.2), b(2.0, 0.5);
  ComplexMatrix m1 = base, m2 = base, mix = base;
  m1.row(1) = r1;
  m2.row(1) = r2;
  mix.row(1) = a * r1 + b * r2;
  EXPECT_LT(rel(permanent_ryser(mix), a * permanent_ryser(m1) + b * permanent_ryser(m2)), 1e-12);
}

TEST(PhotonDistribution, SinglePhoton) {
  const ModeUnitary u = haar_unitary(ModeDim(5, 1), 3);
  const auto dist = photon_distribution(u, {2});
  ASSERT_EQ(dist.outcomes.size(), 5u);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(dist.prob({j}), std::norm(u.matrix()(j, 2)), 1e-14);
}

TEST(PhotonDistribution, PermutationMatrixIsPointMass) {
  // Mode k -> mode perm[k].
  const std::vector<int> perm = {3, 0, 4, 1, 5, 2};
  ComplexMatrix m = ComplexMatrix::Zero(6, 6);
  for (int k = 0; k < 6; ++k) m(perm[static_cast<std::size_t>(k)], k) = 1.0;
  const auto dist = photon_distribution(ModeUnitary(m), {1, 2, 4});
  EXPECT_NEAR(dist.prob({0, 4, 5}), 1.0, 1e-15);
  double total = 0.0;
  for (double p : dist.probs) total += p;
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(PhotonDistribution, ThreePhotonsSumToOne) {
  Xoshiro256 rng(5);
  for (int t = 0; t < 5; ++t) {
    const auto dist = photon_distribution(haar_unitary(ModeDim(7, 1), rng()), {0, 2, 5});
    EXPECT_EQ(dist.outcomes.size(), 35u);
    double total = 0.0;
    for (double p : dist.probs) {
      EXPECT_GE(p, 0.0);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
  EXPECT_THROW(photon_distribution(haar_unitary(ModeDim(4, 1), 1), {1, 1}), ConfigError);
}

TEST(PhotonDistribution, TwoPhotonCrossOracle) {
  for (int d = 2; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const CrossCheck c = two_photon_cross_check(haar_unitary(ModeDim(d, 1), seed));
      EXPECT_LT(c.max_offdiag, 1e-10);
      EXPECT_LT(c.max_diag, 1e-10);
    }
  }
}

TEST(PhotonDistribution, TwoPhotonWeightsNeedNoRescaling) {
  // For N = 2 the raw weights already sum to one.
  const ModeUnitary u = haar_unitary(ModeDim(6, 1), 9);
  double raw = 0.0;
  for (const Modes& o : outcome_set(2, 6)) raw += outcome_weight(u, {1, 4}, o);
  EXPECT_NEAR(raw, 1.0, 1e-12);
}

TEST(PermLoss, Examples) {
  const ModeUnitary u = haar_unitary(ModeDim(6, 1), 4);
  const Modes in = {0, 3, 5};
  const auto truth = photon_distribution(u, in);
  // C is the normalizer that maps raw weights to the distribution.
  double raw = 0.0;
  for (const Modes& o : truth.outcomes) raw += outcome_weight(u, in, o);
  const double c = 1.0 / raw;
  EXPECT_NEAR(perm_loss(truth, u, in, truth.outcomes, c), 0.0, 1e-24);

  MultiPhotonDistribution uniform;
  uniform.n = 1;
  uniform.d = 2;
  uniform.outcomes = {{0}, {1}};
  uniform.probs = {0.5, 0.5};
  const ModeUnitary eye(ComplexMatrix::Identity(2, 2));
  EXPECT_NEAR(perm_loss(uniform, eye, {0}, {{0}, {1}}, 1.0), 0.5, 1e-15);

  std::vector<Modes> coords = {{0, 1, 2}, {1, 3, 5}, {0, 4, 5}};
  const double l = perm_loss(truth, u, in, coords, 1.3);
  std::reverse(coords.begin(), coords.end());
  EXPECT_NEAR(perm_loss(truth, u, in, coords, 1.3), l, 1e-15);
}

}  // namespace
}  // namespace qcnet
