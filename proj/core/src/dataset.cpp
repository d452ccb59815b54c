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

#include "qcnet/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <numbers>
#include <string>

#include "qcnet/binary_io.hpp"
#include "qcnet/error.hpp"
#include "qcnet/parallel.hpp"
#include "qcnet/random.hpp"

namespace qcnet {

InitialStateKind to_state_kind(StateTag tag, const CoherentParams& params) {
  if (tag == StateTag::Noon) return Noon{};
  return WeakCoherent{params};
}

void DatasetConfig::validate() const {
  try {
    ModeDim(d, n_ps);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("d/n_ps: ") + e.what());
  }
  if (n_label < 2) throw ConfigError("n_label: must be >= 2");
  if (!(split > 0.0 && split < 1.0)) throw ConfigError("split: must lie strictly between 0 and 1");
  if (label_mode == LabelMode::Sampled && p == 0) throw ConfigError("p: must be positive for sampled labels");
}

double Dataset::kl_floor() const {
  if (header.label_mode == LabelMode::Sampled) return 1.0 / (10.0 * static_cast<double>(header.p));
  return 1e-9;
}

std::size_t Dataset::train_size(double split) const {
  auto n = static_cast<std::size_t>(std::llround(split * static_cast<double>(records.size())));
  return std::clamp<std::size_t>(n, 1, records.size() - 1);
}

CoincidenceMatrix exact_label(const TwoPhotonState& initial, const ModeUnitary& u0, const PhaseVector& theta) {
  return coincidence(evolve(initial, u0, theta));
}

GeneratedDataset gen_dataset(const DatasetConfig& cfg) {
  cfg.validate();
  const ModeDim dim(cfg.d, cfg.n_ps);
  ModeUnitary u0 = haar_unitary(dim, cfg.unitary_seed);
  const TwoPhotonState initial = build_initial_state(to_state_kind(cfg.state, cfg.coherent), dim);

  const auto n = static_cast<std::size_t>(cfg.n_label);
  std::vector<std::optional<Record>> slots(n);
  parallel_for(n, cfg.threads, [&](std::size_t k) {
    Xoshiro256 rng(derive_seed(cfg.theta_seed, k));
    std::vector<double> theta(static_cast<std::size_t>(cfg.n_ps));
    for (double& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    PhaseVector phases(std::move(theta));
    CoincidenceMatrix exact = exact_label(initial, u0, phases);
    if (cfg.label_mode == LabelMode::Sampled) {
      const EmpiricalCounts counts = sample(exact, cfg.p, derive_seed(~cfg.theta_seed, k));
      slots[k].emplace(Record{std::move(phases), CoincidenceMatrix(counts.normalized())});
    } else {
      slots[k].emplace(Record{std::move(phases), std::move(exact)});
    }
  });

  Dataset ds;
  ds.header = {cfg.d, cfg.n_ps, cfg.state, cfg.label_mode, cfg.label_mode == LabelMode::Sampled ? cfg.p : 0,
               cfg.unitary_seed};
  ds.records.reserve(n);
  for (auto& s : slots) ds.records.push_back(std::move(*s));
  return {std::move(ds), std::move(u0)};
}

void write_dataset(const std::filesystem::path& path, const Dataset& ds) {
  auto out = open_for_write(path);
  BinaryWriter w(out);
  const auto& h = ds.header;
  w.magic("QCDS1");
  w.u32(static_cast<std::uint32_t>(h.d));
  w.u32(static_cast<std::uint32_t>(h.n_ps));
  w.u64(ds.records.size());
  w.u8(static_cast<std::uint8_t>(h.state));
  w.u8(static_cast<std::uint8_t>(h.label_mode));
  w.u64(h.p);
  w.u64(h.unitary_seed);
  for (const Record& r : ds.records) {
    if (r.theta.size() != static_cast<std::size_t>(h.n_ps) || r.target.d() != h.d) {
      throw IoError("dataset record does not match header dimensions");
    }
    w.f64s(r.theta.values());
    w.f64s(r.target.lower_triangle());
  }
}

namespace {

DatasetHeader read_header(BinaryReader& r, const std::string& what, std::uint64_t& n_label) {
  r.expect_magic("QCDS1");
  DatasetHeader h;
  h.d = static_cast<int>(r.u32());
  h.n_ps = static_cast<int>(r.u32());
  n_label = r.u64();
  const std::uint8_t state = r.u8();
  const std::uint8_t mode = r.u8();
  if (state > 1) throw IoError(what + ": unknown state tag " + std::to_string(state));
  if (mode > 1) throw IoError(what + ": unknown label mode " + std::to_string(mode));
  h.state = static_cast<StateTag>(state);
  h.label_mode = static_cast<LabelMode>(mode);
  h.p = r.u64();
  h.unitary_seed = r.u64();
  if (h.d < 2 || h.d > 65536 || h.n_ps < 1 || h.n_ps > h.d) throw IoError(what + ": implausible dimensions");
  return h;
}

}  // namespace

DatasetHeader read_dataset_header(const std::filesystem::path& path, std::uint64_t& n_label) {
  auto in = open_for_read(path);
  BinaryReader r(in, path.string());
  return read_header(r, path.string(), n_label);
}

Dataset read_dataset(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  const std::string what = path.string();
  BinaryReader r(in, what);
  std::uint64_t n_label = 0;
  Dataset ds;
  ds.header = read_header(r, what, n_label);
  const auto cells = static_cast<std::size_t>(ds.header.d * (ds.header.d + 1) / 2);
  std::vector<double> theta(static_cast<std::size_t>(ds.header.n_ps));
  std::vector<double> tri(cells);
  ds.records.reserve(static_cast<std::size_t>(n_label));
  for (std::uint64_t k = 0; k < n_label; ++k) {
    r.f64s(theta);
    r.f64s(tri);
    try {
      ds.records.push_back({PhaseVector(theta), CoincidenceMatrix::from_lower_triangle(tri, ds.header.d)});
    } catch (const NumericError& e) {
      throw IoError(what + ": record " + std::to_string(k) + ": " + e.what());
    }
  }
  if (!r.at_end()) throw IoError(what + ": trailing bytes after last record");
  return ds;
}

}  // namespace qcnet
