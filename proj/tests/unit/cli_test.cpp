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
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qcnet_cli/cli.hpp"

namespace qcnet {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::scratch_dir("cli"); }
  std::string p(const std::string& name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_;
};

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"gen-unitary", "--d", "4", "--seed", "1", "--out", p("u.qcu")}).code, 0);
  EXPECT_EQ(run({"gen-unitary", "--d", "1", "--out", p("v.qcu")}).code, 2);
  EXPECT_EQ(run({"gen-unitary", "--bogus"}).code, 2);
  EXPECT_EQ(run({"inspect", p("missing.qcu")}).code, 4);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  {
    std::ofstream f(p("bad.json"));
    f << R"({"epochz": 3})";
  }
  const Result r = run({"gen-dataset", "--config", p("bad.json"), "--out", p("x.qcds")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("epochz"), std::string::npos);
  EXPECT_EQ(run({"sample", "--unitary", p("u.qcu"), "--theta", "0.1,abc", "--out", p("o.qcob")}).code, 2);
}

TEST_F(CliTest, InspectPrintsHeaders) {
  ASSERT_EQ(run({"gen-dataset", "--d", "4", "--n-ps", "2", "--n-label", "12", "--state", "noon", "--out", p("d.qcds"),
                 "--unitary-out", p("u.qcu"), "--seed", "3"})
                .code,
            0);
  const Result r = run({"inspect", p("d.qcds")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("d: 4"), std::string::npos);
  EXPECT_NE(r.out.find("n_ps: 2"), std::string::npos);
  EXPECT_NE(r.out.find("n_label: 12"), std::string::npos);
  EXPECT_NE(r.out.find("state: noon"), std::string::npos);
  EXPECT_NE(run({"inspect", p("u.qcu")}).out.find("format: QCU1"), std::string::npos);
}

TEST_F(CliTest, PipelineIsByteReproducible) {
  {
    std::ofstream f(p("cfg.json"));
    f << R"({"d": 4, "n_ps": 3, "n_label": 40, "hidden": 8, "bond": 2, "beta": 20, "epochs": 3, "batch": 8,
            "learning_rate": 0.01})";
  }
  auto pipeline = [&](const std::string& tag) {
    EXPECT_EQ(run({"gen-dataset", "--config", p("cfg.json"), "--out", p(tag + ".qcds"), "--unitary-out",
                   p(tag + ".qcu"), "--seed", "5"})
                  .code,
              0);
    for (const std::string arch : {"qcnn", "qctn", "vanilla"}) {
      const Result r = run({"train", "--arch", arch, "--config", p("cfg.json"), "--dataset", p(tag + ".qcds"), "--out",
                            p(tag + "_" + arch + ".qckp"), "--metrics-dir", p(tag + "_" + arch), "--seed", "2"});
      EXPECT_EQ(r.code, 0) << r.err;
    }
    EXPECT_EQ(run({"sample", "--unitary", p(tag + ".qcu"), "--theta", "0.3,1.2,2.0", "--p", "500", "--seed", "7",
                   "--out", p(tag + ".qcob")})
                  .code,
              0);
    EXPECT_EQ(run({"estimate", "--model", "exact", "--unitary", p(tag + ".qcu"), "--n-ps", "3", "--obs",
                   p(tag + ".qcob"), "--iterations", "50", "--seed", "1", "--out", p(tag + "_exact.csv")})
                  .code,
              0);
    const Result r = run({"estimate", "--model", "qctn", "--checkpoint", p(tag + "_qctn.qckp"), "--obs",
                          p(tag + ".qcob"), "--iterations", "50", "--seed", "1", "--out", p(tag + "_qctn.csv")});
    EXPECT_EQ(r.code, 0) << r.err;
  };
  pipeline("a");
  pipeline("b");
  for (const std::string suffix :
       {".qcds", ".qcu", ".qcob", "_qcnn.qckp", "_qctn.qckp", "_vanilla.qckp", "_exact.csv", "_qctn.csv",
        "_qcnn/loss.csv", "_qcnn/val_mae.csv"}) {
    const std::string a = testing::slurp(p("a" + suffix)), b = testing::slurp(p("b" + suffix));
    EXPECT_FALSE(a.empty()) << suffix;
    EXPECT_EQ(a, b) << suffix;
  }
  const std::string loss = testing::slurp(p("a_qcnn/loss.csv"));
  EXPECT_EQ(loss.substr(0, loss.find('\r')), "epoch,train_loss,val_loss");
  const std::string trace = testing::slurp(p("a_exact.csv"));
  EXPECT_EQ(trace.substr(0, trace.find('\r')), "iteration,loss,theta_1,theta_2,theta_3");
  EXPECT_EQ(run({"estimate", "--model", "qcnn", "--checkpoint", p("a_qctn.qckp"), "--obs", p("a.qcob"), "--out",
                 p("z.csv")})
                .code,
            2);
}

TEST_F(CliTest, SchmidtStatsAndPermCheck) {
  const Result r = run({"schmidt-stats", "--state", "noon", "--dims", "4,6", "--draws", "3", "--out", p("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = testing::slurp(p("s.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\r')), "d,mean_top2,sd_top2,mean_rank_q,sd_rank_q");
  EXPECT_NE(csv.find("\n4,0.5"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\n6,0.333333333333333"), std::string::npos) << csv;
  const Result pc = run({"perm-check", "--d", "5", "--trials", "5", "--seed", "2"});
  EXPECT_EQ(pc.code, 0);
  EXPECT_EQ(pc.out.rfind("PASS", 0), 0u);
}

TEST_F(CliTest, BatchEstimate) {
  const Result r = run({"batch-estimate", "--state", "noon", "--d", "6", "--n-ps", "3", "--p", "1000", "--trials", "3",
                        "--iterations", "40", "--restarts", "1", "--seed", "4", "--out", p("b.csv"), "--finals-out",
                        p("f.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = testing::slurp(p("b.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\r')), "iteration,mean_1,mean_2,mean_3,sd_1,sd_2,sd_3");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 42);
}

}  // namespace
}  // namespace qcnet
