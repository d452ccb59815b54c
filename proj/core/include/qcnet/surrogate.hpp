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
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qcnet/adam.hpp"
#include "qcnet/circuit.hpp"
#include "qcnet/tape.hpp"

namespace qcnet {

// ---------------------------------------------------------------------------
// Layers shared by both quantum-consistent surrogates.

/// theta -> (cos theta, sin theta). Phases are reduced modulo 2 pi first, so
/// theta and theta + 2 pi give bit-identical features whenever the shift is
/// exact in floating point.
std::vector<double> feature_map(const PhaseVector& theta);
Var feature_map(Var theta);

/// Reduces phases into [0, 2 pi); identity pullback.
Var wrap_phase(Var theta);

/// Boltzmann normalization plus photon-indistinguishability fold applied to
/// the symmetric real and imaginary pathways:
/// M = Re^2 + Im^2, Q = softmax(beta M), P = fold_lower(Q).
Var quantum_tail(Var re, Var im, double beta);

/// a / sum(a).
Var normalize_mass(Var a);

// ---------------------------------------------------------------------------
// Quantum-consistent neural network.

struct QcnnHyper {
  int d = 8;
  int n_ps = 6;
  int hidden = 100;
  double beta = 1000.0;
};

struct QcnnWeights {
  QcnnHyper hyper;
  Tensor w0;    // hidden x 2 n_ps
  Tensor w_re;  // d^2 x hidden
  Tensor w_im;  // d^2 x hidden

  /// Uniform in +-sqrt(1 / fan_in) per layer.
  static QcnnWeights init(const QcnnHyper& hyper, std::uint64_t seed);
  static QcnnWeights zeros(const QcnnHyper& hyper);
};

std::uint64_t param_count(const QcnnHyper& hyper);

Var qcnn_forward(const QcnnHyper& hyper, Var w0, Var w_re, Var w_im, Var theta);
CoincidenceMatrix qcnn_forward(const QcnnWeights& w, const PhaseVector& theta);

// ---------------------------------------------------------------------------
// Quantum-consistent tensor network: an MPS generator followed by bond-wise
// MPO maps on the real and imaginary pathways.

struct QctnHyper {
  int d = 8;
  int n_ps = 6;
  int bond = 10;
  double beta = 1000.0;
};

struct QctnWeights {
  QctnHyper hyper;
  Tensor w_a;      // 2 n_ps x d x bond
  Tensor w_b;      // 2 n_ps x d x bond
  Tensor o_re_a;   // d x d x bond
  Tensor o_re_b;
  Tensor o_im_a;
  Tensor o_im_b;

  static QctnWeights init(const QctnHyper& hyper, std::uint64_t seed);
  static QctnWeights zeros(const QctnHyper& hyper);
};

std::uint64_t param_count(const QctnHyper& hyper);

/// round(sqrt(d)).
int choose_bond_dim(int d);

struct QctnPathways {
  Var re_raw;  // A' B'^T before symmetrization
  Var im_raw;
  Var probs;
};

QctnPathways qctn_forward_detail(const QctnHyper& hyper, std::span<const Var> w, Var theta);
Var qctn_forward(const QctnHyper& hyper, std::span<const Var> w, Var theta);
CoincidenceMatrix qctn_forward(const QctnWeights& w, const PhaseVector& theta);

// ---------------------------------------------------------------------------
// Baseline without physical layers: raw theta -> dense -> softmax over d^2
// logits -> lower triangle renormalized.

struct VanillaHyper {
  int d = 8;
  int n_ps = 6;
};

struct VanillaWeights {
  VanillaHyper hyper;
  Tensor w;     // d^2 x n_ps
  Tensor bias;  // d^2

  static VanillaWeights init(const VanillaHyper& hyper, std::uint64_t seed);
};

std::uint64_t param_count(const VanillaHyper& hyper);

Var vanilla_forward(const VanillaHyper& hyper, Var w, Var bias, Var theta);
CoincidenceMatrix vanilla_forward(const VanillaWeights& w, const PhaseVector& theta);

// ---------------------------------------------------------------------------
// Type-erased handle used by the trainer, the estimator and checkpoints.

enum class Architecture { Qcnn, Qctn, Vanilla };

std::string to_string(Architecture arch);
Architecture parse_architecture(const std::string& name);

class Surrogate {
 public:
  explicit Surrogate(QcnnWeights w);
  explicit Surrogate(QctnWeights w);
  explicit Surrogate(VanillaWeights w);

  /// Freshly initialized model of the given architecture. `width` is the
  /// hidden size (qcnn) or bond dimension (qctn) and is ignored otherwise.
  static Surrogate create(Architecture arch, const ModeDim& dim, int width, double beta, std::uint64_t seed);

  Architecture arch() const;
  ModeDim dim() const;
  double beta() const;
  /// Hidden width or bond dimension; 0 for the baseline.
  int width() const;
  std::uint64_t param_count() const;

  std::vector<Tensor>& params() { return params_; }
  const std::vector<Tensor>& params() const { return params_; }

  /// Taped forward pass: weights and theta are tape leaves.
  Var forward(Tape& tape, std::span<const Var> weights, Var theta) const;
  CoincidenceMatrix predict(const PhaseVector& theta) const;

  const std::variant<QcnnHyper, QctnHyper, VanillaHyper>& hyper() const { return hyper_; }

 private:
  std::variant<QcnnHyper, QctnHyper, VanillaHyper> hyper_;
  std::vector<Tensor> params_;
};

/// Lower-triangular probability tensor (d x d) as a CoincidenceMatrix.
CoincidenceMatrix to_coincidence(const Tensor& probs);
Tensor to_tensor(const RealMatrix& m);

// "QCKP1" checkpoint: magic, architecture tag (u8 length + bytes), hyper
// block (d, n_ps, width as u64, beta as f64), u32 tensor count, each tensor
// as u32 rank + u64 extents + f64 data, then u8 flag and optional Adam
// state (u64 k, m tensors, v tensors). Little-endian.
void save_checkpoint(const std::filesystem::path& path, const Surrogate& model,
                     const AdamState* adam = nullptr);

struct Checkpoint {
  Surrogate model;
  std::optional<AdamState> adam;
};
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace qcnet
