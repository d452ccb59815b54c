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

#include "oracles.hpp"
#include "qcnet/dataset.hpp"
#include "qcnet/error.hpp"
#include "qcnet/trainer.hpp"

namespace qcnet {
namespace {

RealMatrix tri2(double a, double b, double c) {
  RealMatrix m = RealMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 0) = b;
  m(1, 1) = c;
  return m;
}

TEST(KlLoss, Examples) {
  EXPECT_NEAR(kl_loss(tri2(0.2, 0.3, 0.5), tri2(0.2, 0.3, 0.5), 1e-9), 0.0, 0.0);
  EXPECT_NEAR(kl_loss(tri2(1, 0, 0), tri2(0.5, 0.5, 0), 1e-9), std::log(2.0), 1e-15);
  const double want = 0.5 * std::log(0.5) + 0.5 * std::log(0.5 / 1e-6);
  EXPECT_NEAR(kl_loss(tri2(0.5, 0.5, 0), tri2(1, 0, 0), 1e-6), want, 1e-12);
  EXPECT_NEAR(want, 6.21461, 1e-5);
  EXPECT_THROW(kl_loss(tri2(-0.1, 0.6, 0.5), tri2(0.2, 0.3, 0.5), 1e-9), NumericError);
  EXPECT_THROW(kl_loss(tri2(1, 0, 0), tri2(1, 0, 0), 0.0), ConfigError);
}

TEST(KlLoss, GibbsOnRandomPairs) {
  Xoshiro256 rng(1);
  for (int t = 0; t < 500; ++t) {
    const int d = 2 + static_cast<int>(rng.below(6));
    RealMatrix p = RealMatrix::Zero(d, d), q = RealMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= i; ++j) {
        p(i, j) = rng.uniform(0.01, 1.0);
        q(i, j) = rng.uniform(0.01, 1.0);
      }
    }
    p /= p.sum();
    q /= q.sum();
    EXPECT_GE(kl_loss(p, q, 1e-12), -1e-12);
    EXPECT_NEAR(kl_loss(p, p, 1e-12), 0.0, 1e-15);
  }
}

TEST(KlLoss, CountsUseNormalizedView) {
  const EmpiricalCounts c(2, {1, 3, 0});
  const CoincidenceMatrix pred(tri2(0.25, 0.75, 0.0));
  EXPECT_NEAR(kl_loss(pred, c, 1e-9), 0.0, 1e-15);
}

DatasetConfig small_config() {
  DatasetConfig c;
  c.d = 4;
  c.n_ps = 3;
  c.n_label = 60;
  c.unitary_seed = 11;
  c.theta_seed = 12;
  c.threads = 1;
  return c;
}

TEST(Dataset, DeterministicFilesAcrossThreadCounts) {
  const auto dir = testing::scratch_dir("dataset_det");
  DatasetConfig c = small_config();
  c.n_label = 10;
  write_dataset(dir / "a.qcds", gen_dataset(c).dataset);
  c.threads = 3;
  write_dataset(dir / "b.qcds", gen_dataset(c).dataset);
  EXPECT_EQ(testing::slurp(dir / "a.qcds"), testing::slurp(dir / "b.qcds"));
  // Header + records: 5 + 4 + 4 + 8 + 1 + 1 + 8 + 8, then 10 * (3 + 10) doubles.
  EXPECT_EQ(std::filesystem::file_size(dir / "a.qcds"), 39u + 10u * 13u * 8u);
}

TEST(Dataset, RecordsAreValidAndReproducible) {
  const DatasetConfig c = small_config();
  const GeneratedDataset g = gen_dataset(c);
  ASSERT_EQ(g.dataset.records.size(), 60u);
  const TwoPhotonState init = build_initial_state(WeakCoherent{}, ModeDim(4, 3));
  for (const Record& r : g.dataset.records) {
    EXPECT_NEAR(r.target.probs().sum(), 1.0, 1e-12);
    for (double t : r.theta.values()) {
      EXPECT_GE(t, 0.0);
      EXPECT_LT(t, 2 * M_PI);
    }
    EXPECT_EQ(exact_label(init, g.unitary, r.theta).probs(), r.target.probs());
  }
  EXPECT_EQ(g.unitary.matrix(), haar_unitary(ModeDim(4, 3), 11).matrix());
}

TEST(Dataset, SampledLabels) {
  DatasetConfig c = small_config();
  c.label_mode = LabelMode::Sampled;
  c.p = 50;
  const Dataset ds = gen_dataset(c).dataset;
  for (const Record& r : ds.records) {
    const RealMatrix scaled = r.target.probs() * 50.0;
    EXPECT_LT((scaled - scaled.array().round().matrix()).cwiseAbs().maxCoeff(), 1e-9);
  }
  EXPECT_DOUBLE_EQ(ds.kl_floor(), 1.0 / 500.0);
}

TEST(Dataset, FileRoundTripAndHeader) {
  const auto dir = testing::scratch_dir("dataset_io");
  DatasetConfig c = small_config();
  c.state = StateTag::Noon;
  const Dataset ds = gen_dataset(c).dataset;
  write_dataset(dir / "d.qcds", ds);
  const Dataset back = read_dataset(dir / "d.qcds");
  ASSERT_EQ(back.records.size(), ds.records.size());
  for (std::size_t k = 0; k < ds.records.size(); ++k) {
    EXPECT_EQ(back.records[k].theta.values(), ds.records[k].theta.values());
    EXPECT_EQ(back.records[k].target.probs(), ds.records[k].target.probs());
  }
  std::uint64_t n = 0;
  const DatasetHeader h = read_dataset_header(dir / "d.qcds", n);
  EXPECT_EQ(n, 60u);
  EXPECT_EQ(h.state, StateTag::Noon);
  EXPECT_EQ(h.d, 4);
  EXPECT_EQ(h.n_ps, 3);
  EXPECT_EQ(h.unitary_seed, 11u);
}

TEST(Dataset, ConfigValidation) {
  DatasetConfig c = small_config();
  c.split = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config();
  c.n_label = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config();
  c.n_ps = 9;
  EXPECT_THROW(c.validate(), ConfigError);
}

TrainConfig small_train(double lr, int epochs, unsigned threads) {
  TrainConfig t;
  t.batch = 8;
  t.learning_rate = lr;
  t.epochs = epochs;
  t.seed = 5;
  t.threads = threads;
  return t;
}

TEST(Train, ZeroLearningRateFreezesWeights) {
  const Dataset ds = gen_dataset(small_config()).dataset;
  const Surrogate s = Surrogate::create(Architecture::Qcnn, ds.dim(), 16, 50.0, 3);
  const TrainResult r = train(s, ds, small_train(0.0, 4, 1));
  EXPECT_EQ(r.model.params(), s.params());
  for (double v : r.metrics.val_loss) EXPECT_EQ(v, r.metrics.val_loss.front());
  EXPECT_EQ(r.metrics.train_loss.size(), 4u);
}

TEST(Train, ReducesLossAndIsDeterministic) {
  const Dataset ds = gen_dataset(small_config()).dataset;
  for (auto arch : {Architecture::Qcnn, Architecture::Qctn}) {
    const Surrogate s = Surrogate::create(arch, ds.dim(), arch == Architecture::Qcnn ? 32 : 4, 20.0, 3);
    const double before = mean_kl(s, ds.records, ds.kl_floor(), 1);
    const TrainResult a = train(s, ds, small_train(0.005, 30, 1));
    const TrainResult b = train(s, ds, small_train(0.005, 30, 3));
    EXPECT_EQ(a.model.params(), b.model.params()) << to_string(arch);
    EXPECT_EQ(a.metrics.val_loss, b.metrics.val_loss);
    EXPECT_LT(mean_kl(a.model, ds.records, ds.kl_floor(), 1), 0.5 * before) << to_string(arch);
    for (double v : a.metrics.train_loss) EXPECT_TRUE(std::isfinite(v));
    EXPECT_EQ(a.adam.k, 30u * ((ds.train_size(0.7) + 7) / 8));
    EXPECT_EQ(a.metrics.val_mae.size(), ds.records.size() - ds.train_size(0.7));
  }
}

TEST(Train, DimensionMismatch) {
  const Dataset ds = gen_dataset(small_config()).dataset;
  const Surrogate s = Surrogate::create(Architecture::Qcnn, ModeDim(5, 3), 8, 10.0, 1);
  EXPECT_THROW(train(s, ds, small_train(0.1, 1, 1)), ConfigError);
}

TEST(Metrics, CellMae) {
  const CoincidenceMatrix a(tri2(0.5, 0.5, 0.0)), b(tri2(0.2, 0.5, 0.3));
  EXPECT_NEAR(cell_mae(a, b), 0.6 / 3.0, 1e-15);
}

}  // namespace
}  // namespace qcnet
