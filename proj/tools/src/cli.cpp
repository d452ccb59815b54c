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

#include "qcnet_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qcnet/binary_io.hpp"
#include "qcnet/circuit.hpp"
#include "qcnet/dataset.hpp"
#include "qcnet/entanglement.hpp"
#include "qcnet/error.hpp"
#include "qcnet/estimation.hpp"
#include "qcnet/parallel.hpp"
#include "qcnet/permanent.hpp"
#include "qcnet/random.hpp"
#include "qcnet/run_config.hpp"
#include "qcnet/surrogate.hpp"
#include "qcnet/trainer.hpp"
#include "qcnet_cli/csv.hpp"

namespace qcnet::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kTwoPi = 6.283185307179586;

std::vector<double> parse_doubles(const std::string& text, const std::string& flag) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(flag + ": cannot parse '" + item + "'");
    }
  }
  if (v.empty()) throw ConfigError(flag + ": empty list");
  return v;
}

std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
  std::vector<int> v;
  for (double x : parse_doubles(text, flag)) {
    if (x != static_cast<int>(x)) throw ConfigError(flag + ": expected integers");
    v.push_back(static_cast<int>(x));
  }
  return v;
}

StateTag parse_state(const std::string& s) {
  if (s == "weak") return StateTag::WeakCoherent;
  if (s == "noon") return StateTag::Noon;
  throw ConfigError("--state: expected weak or noon");
}

std::string state_name(StateTag t) { return t == StateTag::Noon ? "noon" : "weak"; }

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string());
  }
}

// Options every subcommand carries.
struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--threads", c.threads, "Worker threads (0 = hardware count)");
}

Observation read_observation(const fs::path& path) {
  const std::string magic = sniff_magic(path);
  if (magic == "QCOB1") return read_counts(path);
  throw ConfigError("--obs: " + path.string() + " is not a counts file");
}

// ---------------------------------------------------------------------------

struct GenUnitary {
  Common common;
  int d = 0;
  std::string out;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os) {
    auto* sub = app.add_subcommand("gen-unitary", "Sample a Haar-random unitary");
    sub->add_option("--d", d, "Number of modes")->required();
    sub->add_option("--out", out, "Output QCU1 file")->required();
    add_common(sub, common);
    sub->callback([this, &action, &os] {
      action = [this, &os] {
        const ModeUnitary u = haar_unitary(ModeDim(d, std::min(d, 6)), common.seed);
        ensure_parent(out);
        write_unitary(out, u);
        os << "unitary d=" << d << " seed=" << common.seed << " -> " << out << "\n";
      };
    });
  }
};

struct GenDataset {
  Common common;
  std::string config;
  std::optional<int> d, n_ps;
  std::optional<std::string> state, label_mode, out, unitary_out;
  std::optional<std::uint64_t> n_label, p, unitary_seed;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os) {
    auto* sub = app.add_subcommand("gen-dataset", "Generate a labelled (theta, P) dataset");
    sub->add_option("--config", config, "JSON run configuration");
    sub->add_option("--d", d, "Number of modes");
    sub->add_option("--n-ps", n_ps, "Number of phase shifters");
    sub->add_option("--state", state, "weak | noon");
    sub->add_option("--n-label", n_label, "Number of records");
    sub->add_option("--label-mode", label_mode, "exact | sampled");
    sub->add_option("--p", p, "Samples per sampled label");
    sub->add_option("--unitary-seed", unitary_seed, "Seed of the fixed unitary U0");
    sub->add_option("--out", out, "Output QCDS1 file");
    sub->add_option("--unitary-out", unitary_out, "Output QCU1 file for U0");
    add_common(sub, common);
    sub->callback([this, &action, &os, sub] {
      action = [this, &os, sub] {
        RunConfig rc = config.empty() ? RunConfig{} : load_run_config(config);
        if (sub->count("--seed")) rc.data.theta_seed = common.seed;
        if (d) rc.data.d = *d;
        if (n_ps) rc.data.n_ps = *n_ps;
        if (state) rc.data.state = parse_state(*state);
        if (n_label) rc.data.n_label = *n_label;
        if (label_mode) {
          if (*label_mode == "exact") rc.data.label_mode = LabelMode::Exact;
          else if (*label_mode == "sampled") rc.data.label_mode = LabelMode::Sampled;
          else throw ConfigError("--label-mode: expected exact or sampled");
        }
        if (p) rc.data.p = *p;
        if (unitary_seed) rc.data.unitary_seed = *unitary_seed;
        if (sub->count("--threads")) rc.data.threads = common.threads;
        if (out) rc.dataset = *out;
        if (unitary_out) rc.unitary = *unitary_out;
        if (rc.dataset.empty()) throw ConfigError("dataset: no output path (--out or config key)");
        rc.data.validate();
        const GeneratedDataset g = gen_dataset(rc.data);
        ensure_parent(rc.dataset);
        write_dataset(rc.dataset, g.dataset);
        if (!rc.unitary.empty()) {
          ensure_parent(rc.unitary);
          write_unitary(rc.unitary, g.unitary);
        }
        os << "dataset d=" << rc.data.d << " n_ps=" << rc.data.n_ps << " n_label=" << rc.data.n_label
           << " state=" << state_name(rc.data.state) << " -> " << rc.dataset << "\n";
      };
    });
  }
};

struct Train {
  Common common;
  std::string config, arch;
  std::optional<std::string> dataset, out, metrics_dir;
  std::optional<int> epochs;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os) {
    auto* sub = app.add_subcommand("train", "Train a surrogate on a dataset");
    sub->add_option("--arch", arch, "qcnn | qctn | vanilla");
    sub->add_option("--config", config, "JSON run configuration");
    sub->add_option("--dataset", dataset, "QCDS1 dataset");
    sub->add_option("--out", out, "Output QCKP1 checkpoint");
    sub->add_option("--metrics-dir", metrics_dir, "Directory for loss.csv and val_mae.csv");
    sub->add_option("--epochs", epochs, "Override the epoch count");
    add_common(sub, common);
    sub->callback([this, &action, &os, sub] {
      action = [this, &os, sub] {
        RunConfig rc = config.empty() ? RunConfig{} : load_run_config(config);
        if (!arch.empty()) rc.arch = parse_architecture(arch);
        if (sub->count("--seed")) rc.train.seed = common.seed;
        if (sub->count("--threads")) rc.train.threads = common.threads;
        if (epochs) rc.train.epochs = *epochs;
        if (dataset) rc.dataset = *dataset;
        if (out) rc.checkpoint = *out;
        if (metrics_dir) rc.metrics_dir = *metrics_dir;
        if (rc.dataset.empty()) throw ConfigError("dataset: no input path (--dataset or config key)");
        if (rc.checkpoint.empty()) throw ConfigError("checkpoint: no output path (--out or config key)");
        rc.train.validate();

        const Dataset ds = read_dataset(rc.dataset);
        Surrogate model = Surrogate::create(rc.arch, ds.dim(), rc.width(), rc.beta, rc.train.seed);
        os << "train arch=" << to_string(rc.arch) << " d=" << ds.header.d << " params=" << model.param_count()
           << " records=" << ds.records.size() << "\n";
        const TrainResult r = train(std::move(model), ds, rc.train);
        ensure_parent(rc.checkpoint);
        save_checkpoint(rc.checkpoint, r.model, &r.adam);
        if (!rc.metrics_dir.empty()) {
          fs::create_directories(rc.metrics_dir);
          CsvWriter loss(fs::path(rc.metrics_dir) / "loss.csv", {"epoch", "train_loss", "val_loss"});
          for (std::size_t e = 0; e < r.metrics.train_loss.size(); ++e) {
            loss.row({std::to_string(e + 1), fmt(r.metrics.train_loss[e]), fmt(r.metrics.val_loss[e])});
          }
          loss.close();
          CsvWriter mae(fs::path(rc.metrics_dir) / "val_mae.csv", {"record", "mae"});
          const std::size_t first = ds.train_size(rc.train.split);
          for (std::size_t k = 0; k < r.metrics.val_mae.size(); ++k) {
            mae.row({std::to_string(first + k), fmt(r.metrics.val_mae[k])});
          }
          mae.close();
        }
        os << "final train_loss=" << fmt(r.metrics.train_loss.empty() ? 0.0 : r.metrics.train_loss.back())
           << " val_loss=" << fmt(r.metrics.val_loss.empty() ? 0.0 : r.metrics.val_loss.back())
           << " mean_val_mae=" << fmt(r.metrics.mean_val_mae) << " -> " << rc.checkpoint << "\n";
      };
    });
  }
};

struct EstimateCmd {
  Common common;
  std::string model = "exact", unitary, checkpoint, obs, out, state = "weak";
  std::string truth, init;
  int n_ps = 6, iterations = 2000, restarts = 4;
  double lr = 0.1;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os) {
    auto* sub = app.add_subcommand("estimate", "Recover phases from an observation");
    sub->add_option("--model", model, "exact | qcnn | qctn | vanilla");
    sub->add_option("--unitary", unitary, "QCU1 unitary (exact model)");
    sub->add_option("--checkpoint", checkpoint, "QCKP1 checkpoint (surrogate models)");
    sub->add_option("--obs", obs, "QCOB1 counts file")->required();
    sub->add_option("--state", state, "weak | noon (exact model)");
    sub->add_option("--n-ps", n_ps, "Number of phase shifters (exact model)");
    sub->add_option("--iterations", iterations, "Adam iterations");
    sub->add_option("--restarts", restarts, "Random restarts");
    sub->add_option("--lr", lr, "Adam step size");
    sub->add_option("--truth", truth, "Known phases, comma separated, for residuals");
    sub->add_option("--init", init, "Starting phases of the first restart");
    sub->add_option("--out", out, "Trace CSV")->required();
    add_common(sub, common);
    sub->callback([this, &action, &os] {
      action = [this, &os] {
        const Observation observed = read_observation(obs);
        std::optional<EstimationProblem> problem;
        if (model == "exact") {
          if (unitary.empty()) throw ConfigError("--unitary: required for the exact model");
          const ModeUnitary u0 = read_unitary(unitary);
          const ModeDim dim(u0.d(), n_ps);
          problem.emplace(ExactModel{build_initial_state(to_state_kind(parse_state(state)), dim), u0, n_ps}, observed);
        } else {
          if (checkpoint.empty()) throw ConfigError("--checkpoint: required for surrogate models");
          Checkpoint ck = load_checkpoint(checkpoint);
          if (ck.model.arch() != parse_architecture(model)) {
            throw ConfigError("--model: checkpoint holds " + to_string(ck.model.arch()));
          }
          problem.emplace(std::move(ck.model), observed);
        }
        EstimationOptions opt;
        opt.adam.alpha = lr;
        opt.iterations = iterations;
        opt.restarts = restarts;
        opt.seed = common.seed;
        opt.threads = common.threads;
        if (!init.empty()) opt.init = PhaseVector(parse_doubles(init, "--init"));
        if (!truth.empty()) opt.truth = PhaseVector(parse_doubles(truth, "--truth"));
        const EstimationTrace tr = estimate(*problem, opt);

        std::vector<std::string> header = {"iteration", "loss"};
        for (auto& h : numbered("theta_", static_cast<std::size_t>(problem->n_ps()))) header.push_back(h);
        ensure_parent(out);
        CsvWriter csv(out, header);
        for (std::size_t k = 0; k < tr.thetas.size(); ++k) {
          std::vector<std::string> row = {std::to_string(k), fmt(tr.losses[k])};
          for (double t : tr.thetas[k]) row.push_back(fmt(t));
          csv.row(row);
        }
        csv.close();
        os << "final_loss=" << fmt(tr.final_loss) << " restart=" << tr.restart << " theta=";
        for (std::size_t i = 0; i < tr.final_theta.size(); ++i) os << (i ? "," : "") << fmt(tr.final_theta[i]);
        os << "\n";
        if (!tr.residuals.empty()) {
          double worst = 0.0;
          for (double r : tr.residuals) worst = std::max(worst, std::abs(r));
          os << "max_abs_residual=" << fmt(worst) << "\n";
        }
      };
    });
  }
};

struct BatchEstimateCmd {
  Common common;
  std::string state = "weak", unitary, truth, out, finals_out;
  int d = 16, n_ps = 6, trials = 100, iterations = 2000, restarts = 4;
  std::uint64_t p = 1000;
  double lr = 0.1;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os) {
    auto* sub = app.add_subcommand("batch-estimate", "Repeated exact-model estimation on sampled observations");
    sub->add_option("--state", state, "weak | noon");
    sub->add_option("--d", d, "Number of modes (ignored with --unitary)");
    sub->add_option("--n-ps", n_ps, "Number of phase shifters");
    sub->add_option("--unitary", unitary, "QCU1 unitary; drawn from the seed when absent");
    sub->add_option("--p", p, "Samples per observation (0 = exact distribution)");
    sub->add_option("--trials", trials, "Number of observations");
    sub->add_option("--iterations", iterations, "Adam iterations");
    sub->add_option("--restarts", restarts, "Random restarts per trial");
    sub->add_option("--lr", lr, "Adam step size");
    sub->add_option("--truth", truth, "True phases; drawn from the seed when absent");
    sub->add_option("--out", out, "Per-iteration residual mean/SD CSV")->required();
    sub->add_option("--finals-out", finals_out, "Per-trial final residual CSV");
    add_common(sub, common);
    sub->callback([this, &action, &os] {
      action = [this, &os] {
        const ModeUnitary u0 = unitary.empty() ? haar_unitary(ModeDim(d, n_ps), derive_seed(common.seed, 0))
                                               : read_unitary(unitary);
        const ModeDim dim(u0.d(), n_ps);
        const ExactModel model{build_initial_state(to_state_kind(parse_state(state)), dim), u0, n_ps};
        std::vector<double> t;
        if (truth.empty()) {
          Xoshiro256 rng(derive_seed(common.seed, 1));
          for (int k = 0; k < n_ps; ++k) t.push_back(rng.uniform(0.0, kTwoPi));
        } else {
          t = parse_doubles(truth, "--truth");
        }
        const PhaseVector tv(t);
        EstimationOptions opt;
        opt.adam.alpha = lr;
        opt.iterations = iterations;
        opt.restarts = restarts;
        opt.seed = derive_seed(common.seed, 2);
        opt.threads = common.threads;
        const BatchSummary s = batch_estimate(model, tv, p, trials, opt);

        std::vector<std::string> header = {"iteration"};
        for (auto& h : numbered("mean_", t.size())) header.push_back(h);
        for (auto& h : numbered("sd_", t.size())) header.push_back(h);
        ensure_parent(out);
        CsvWriter csv(out, header);
        for (std::size_t k = 0; k < s.mean.size(); ++k) {
          std::vector<std::string> row = {std::to_string(k)};
          for (double m : s.mean[k]) row.push_back(fmt(m));
          for (double v : s.sd[k]) row.push_back(fmt(v));
          csv.row(row);
        }
        csv.close();
        if (!finals_out.empty()) {
          std::vector<std::string> fh = {"trial", "loss"};
          for (auto& h : numbered("residual_", t.size())) fh.push_back(h);
          ensure_parent(finals_out);
          CsvWriter f(finals_out, fh);
          for (std::size_t i = 0; i < s.final_residuals.size(); ++i) {
            std::vector<std::string> row = {std::to_string(i), fmt(s.final_losses[i])};
            for (double r : s.final_residuals[i]) row.push_back(fmt(r));
            f.row(row);
          }
          f.close();
        }
        os << "state=" << state << " d=" << u0.d() << " p=" << p << " trials=" << trials
           << " final_sd=" << fmt(s.final_sd()) << " final_mean_abs=" << fmt(s.final_mean_abs()) << "\n";
      };
    });
  }
};

struct SchmidtStatsCmd {
  Common common;
  std::string state = "weak", dims = "8,16,32,64", out;
  int draws = 200, n_ps = 6;
  double q = 0.9;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os) {
    auto* sub = app.add_subcommand("schmidt-stats", "Schmidt spectrum statistics over Haar draws");
    sub->add_option("--state", state, "weak | noon");
    sub->add_option("--dims", dims, "Comma-separated mode counts");
    sub->add_option("--draws", draws, "Haar draws per dimension");
    sub->add_option("--q", q, "Weight threshold for the rank");
    sub->add_option("--n-ps", n_ps, "Number of phase shifters");
    sub->add_option("--out", out, "Output CSV")->required();
    add_common(sub, common);
    sub->callback([this, &action, &os] {
      action = [this, &os] {
        const auto rows = rank_stats(to_state_kind(parse_state(state)), parse_ints(dims, "--dims"), draws, q,
                                     common.seed, n_ps, common.threads);
        ensure_parent(out);
        CsvWriter csv(out, {"d", "mean_top2", "sd_top2", "mean_rank_q", "sd_rank_q"});
        for (const auto& r : rows) {
          csv.row({std::to_string(r.d), fmt(r.mean_top2), fmt(r.sd_top2), fmt(r.mean_rank_q), fmt(r.sd_rank_q)});
          os << "d=" << r.d << " mean_top2=" << fmt(r.mean_top2) << " mean_rank=" << fmt(r.mean_rank_q) << "\n";
        }
        csv.close();
      };
    });
  }
};

struct SampleCmd {
  Common common;
  std::string unitary, state = "weak", theta, out;
  std::uint64_t p = 1000;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os) {
    auto* sub = app.add_subcommand("sample", "Draw coincidence counts at a phase setting");
    sub->add_option("--unitary", unitary, "QCU1 unitary")->required();
    sub->add_option("--state", state, "weak | noon");
    sub->add_option("--theta", theta, "Phases, comma separated")->required();
    sub->add_option("--p", p, "Number of samples");
    sub->add_option("--out", out, "Output QCOB1 file")->required();
    add_common(sub, common);
    sub->callback([this, &action, &os] {
      action = [this, &os] {
        const ModeUnitary u0 = read_unitary(unitary);
        const PhaseVector th(parse_doubles(theta, "--theta"));
        const ModeDim dim(u0.d(), static_cast<int>(th.size()));
        const auto label = exact_label(build_initial_state(to_state_kind(parse_state(state)), dim), u0, th);
        const EmpiricalCounts counts = sample(label, p, common.seed);
        ensure_parent(out);
        write_counts(out, counts);
        os << "counts d=" << u0.d() << " p=" << p << " tv=" << fmt(total_variation(label, counts)) << " -> " << out
           << "\n";
      };
    });
  }
};

struct PermCheckCmd {
  Common common;
  int d = 8, trials = 50;
  double tol = 1e-10;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os, int& status) {
    auto* sub = app.add_subcommand("perm-check", "Two-photon permanent cross-check on Haar unitaries");
    sub->add_option("--d", d, "Number of modes");
    sub->add_option("--trials", trials, "Haar instances");
    sub->add_option("--tol", tol, "Pass threshold on the maximum deviation");
    add_common(sub, common);
    sub->callback([this, &action, &os, &status] {
      action = [this, &os, &status] {
        if (trials < 1) throw ConfigError("--trials: must be >= 1");
        std::vector<CrossCheck> res(static_cast<std::size_t>(trials));
        parallel_for(res.size(), common.threads, [&](std::size_t t) {
          res[t] = two_photon_cross_check(haar_unitary(ModeDim(d, std::min(d, 6)), derive_seed(common.seed, t)));
        });
        CrossCheck worst;
        for (const auto& r : res) {
          worst.max_offdiag = std::max(worst.max_offdiag, r.max_offdiag);
          worst.max_diag = std::max(worst.max_diag, r.max_diag);
        }
        const bool pass = worst.max_offdiag < tol && worst.max_diag < tol;
        os << (pass ? "PASS" : "FAIL") << " d=" << d << " trials=" << trials
           << " max_offdiag_dev=" << fmt(worst.max_offdiag) << " max_diag_dev=" << fmt(worst.max_diag) << "\n";
        if (!pass) status = kNumeric;
      };
    });
  }
};

struct InspectCmd {
  Common common;
  std::string path;

  void attach(CLI::App& app, std::function<void()>& action, std::ostream& os) {
    auto* sub = app.add_subcommand("inspect", "Print the header of any qcnet file");
    sub->add_option("path", path, "File to inspect")->required();
    add_common(sub, common);
    sub->callback([this, &action, &os] {
      action = [this, &os] {
        const std::string magic = sniff_magic(path);
        os << "format: " << magic << "\n";
        if (magic == "QCU1") {
          const ModeUnitary u = read_unitary(path);
          os << "d: " << u.d() << "\nseed: " << u.seed()
             << "\nunitarity_defect: " << fmt(ModeUnitary::unitarity_defect(u.matrix())) << "\n";
        } else if (magic == "QCDS1") {
          std::uint64_t n_label = 0;
          const DatasetHeader h = read_dataset_header(path, n_label);
          os << "d: " << h.d << "\nn_ps: " << h.n_ps << "\nn_label: " << n_label << "\nstate: " << state_name(h.state)
             << "\nlabel_mode: " << (h.label_mode == LabelMode::Exact ? "exact" : "sampled") << "\np: " << h.p
             << "\nunitary_seed: " << h.unitary_seed << "\n";
        } else if (magic == "QCKP1") {
          const Checkpoint ck = load_checkpoint(path);
          os << "arch: " << to_string(ck.model.arch()) << "\nd: " << ck.model.dim().d()
             << "\nn_ps: " << ck.model.dim().n_ps() << "\nwidth: " << ck.model.width()
             << "\nbeta: " << fmt(ck.model.beta()) << "\nparams: " << ck.model.param_count()
             << "\nadam_steps: " << (ck.adam ? std::to_string(ck.adam->k) : std::string("none")) << "\n";
        } else if (magic == "QCOB1") {
          const EmpiricalCounts c = read_counts(path);
          os << "d: " << c.d() << "\np: " << c.p() << "\n";
        } else {
          throw IoError(path + ": unrecognized file format");
        }
      };
    });
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcnet: two-photon linear-optics simulator and surrogate phase estimation"};
  app.require_subcommand(1);
  std::function<void()> action;
  int status = kOk;

  GenUnitary gen_unitary;
  GenDataset gen_data;
  Train train_cmd;
  EstimateCmd estimate_cmd;
  BatchEstimateCmd batch_cmd;
  SchmidtStatsCmd schmidt_cmd;
  SampleCmd sample_cmd;
  PermCheckCmd perm_cmd;
  InspectCmd inspect_cmd;
  gen_unitary.attach(app, action, out);
  gen_data.attach(app, action, out);
  train_cmd.attach(app, action, out);
  estimate_cmd.attach(app, action, out);
  batch_cmd.attach(app, action, out);
  schmidt_cmd.attach(app, action, out);
  sample_cmd.attach(app, action, out);
  perm_cmd.attach(app, action, out, status);
  inspect_cmd.attach(app, action, out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfig;
  }

  const std::string name = app.get_subcommands().empty() ? "qcnet" : app.get_subcommands().front()->get_name();
  try {
    if (action) action();
  } catch (const ConfigError& e) {
    err << name << ": config error: " << e.what() << "\n";
    return kConfig;
  } catch (const NumericError& e) {
    err << name << ": numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const IoError& e) {
    err << name << ": I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << name << ": I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << name << ": error: " << e.what() << "\n";
    return kNumeric;
  }
  return status;
}

}  // namespace qcnet::cli
