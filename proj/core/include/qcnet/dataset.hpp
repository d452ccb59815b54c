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
#include <filesystem>
#include <vector>

#include "qcnet/circuit.hpp"
#include "qcnet/fock.hpp"

namespace qcnet {

enum class StateTag : std::uint8_t { WeakCoherent = 0, Noon = 1 };
enum class LabelMode : std::uint8_t { Exact = 0, Sampled = 1 };

InitialStateKind to_state_kind(StateTag tag, const CoherentParams& params = {});

struct DatasetConfig {
  int d = 8;
  int n_ps = 6;
  std::uint64_t n_label = 10000;
  double split = 0.7;
  LabelMode label_mode = LabelMode::Exact;
  std::uint64_t p = 1000;  // samples per record when label_mode == Sampled
  StateTag state = StateTag::WeakCoherent;
  CoherentParams coherent{};
  std::uint64_t unitary_seed = 1;
  std::uint64_t theta_seed = 2;
  unsigned threads = 0;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct Record {
  PhaseVector theta;
  CoincidenceMatrix target;
};

struct DatasetHeader {
  int d = 0;
  int n_ps = 0;
  StateTag state = StateTag::WeakCoherent;
  LabelMode label_mode = LabelMode::Exact;
  std::uint64_t p = 0;
  std::uint64_t unitary_seed = 0;
};

struct Dataset {
  DatasetHeader header;
  std::vector<Record> records;

  ModeDim dim() const { return ModeDim(header.d, header.n_ps); }
  /// KL floor matching the label mode: 1e-9 for exact labels, 1/(10 p) for sampled.
  double kl_floor() const;
  /// First round(split * n) records train, the rest validate.
  std::size_t train_size(double split) const;
};

struct GeneratedDataset {
  Dataset dataset;
  ModeUnitary unitary;
};

/// Draws n_label phase vectors uniformly from [0, 2 pi)^n_ps and labels each
/// with the coincidence distribution of the evolved state (or a p-sample of
/// it). Record k depends only on (theta_seed, k), so the thread count does
/// not change the output.
GeneratedDataset gen_dataset(const DatasetConfig& cfg);

/// Exact coincidence distribution for one phase setting.
CoincidenceMatrix exact_label(const TwoPhotonState& initial, const ModeUnitary& u0, const PhaseVector& theta);

// "QCDS1" file: magic; d (u32), n_ps (u32), n_label (u64), state tag (u8),
// label mode (u8) + p (u64), unitary seed (u64); then per record n_ps f64
// phases and d(d+1)/2 f64 lower-triangle cells (row-major, i >= j).
void write_dataset(const std::filesystem::path& path, const Dataset& ds);
Dataset read_dataset(const std::filesystem::path& path);
/// Header only; n_label is returned through `n_label`.
DatasetHeader read_dataset_header(const std::filesystem::path& path, std::uint64_t& n_label);

}  // namespace qcnet
