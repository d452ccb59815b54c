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
#include <string>

#include "qcnet/dataset.hpp"
#include "qcnet/surrogate.hpp"
#include "qcnet/trainer.hpp"

namespace qcnet {

/// Flat JSON run configuration. Every key is optional; unknown keys are
/// rejected. Defaults:
///
///   d              8          modes
///   n_ps           6          phase shifters
///   state          "weak"     "weak" (weak-coherent) or "noon"
///   alpha1         2.0        coherent amplitude, number or [re, im]
///   alpha2         3.0
///   n_label        10000      dataset records
///   split          0.7        training fraction
///   label_mode     "exact"    "exact" or "sampled"
///   p              1000       samples per sampled label
///   unitary_seed   1
///   theta_seed     2
///   arch           "qcnn"     "qcnn", "qctn" or "vanilla"
///   hidden         100        QCNN hidden width l
///   bond           10         QCTN bond dimension d_b
///   beta           1000       inverse temperature
///   learning_rate  0.1
///   batch          32
///   epochs         200
///   beta1          0.9
///   beta2          0.999
///   epsilon        1e-8
///   seed           0          weight init and shuffling
///   threads        0          0 = hardware count
///   unitary        ""         file paths used by the pipeline commands
///   dataset        ""
///   checkpoint     ""
///   metrics_dir    ""
struct RunConfig {
  DatasetConfig data{};
  Architecture arch = Architecture::Qcnn;
  int hidden = 100;
  int bond = 10;
  double beta = 1000.0;
  TrainConfig train{};
  std::string unitary;
  std::string dataset;
  std::string checkpoint;
  std::string metrics_dir;

  /// Width passed to Surrogate::create for `arch`.
  int width() const;
};

/// Throws ConfigError naming the offending key.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace qcnet
