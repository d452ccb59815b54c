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
#include <span>
#include <vector>

#include "qcnet/fock.hpp"

namespace qcnet {

/// A d x d unitary over modes together with the seed that generated it
/// (0 when it came from elsewhere).
class ModeUnitary {
 public:
  /// Checks max|U^dagger U - I| < 1e-12.
  ModeUnitary(ComplexMatrix matrix, std::uint64_t seed = 0);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::uint64_t seed() const { return seed_; }
  int d() const { return static_cast<int>(matrix_.rows()); }

  /// max_ij |(U^dagger U - I)_ij|
  static double unitarity_defect(const ComplexMatrix& m);

 private:
  ComplexMatrix matrix_;
  std::uint64_t seed_;
};

/// Phase-shifter settings in radians, one per controllable shifter.
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> theta);

  const std::vector<double>& values() const { return theta_; }
  std::size_t size() const { return theta_.size(); }
  double operator[](std::size_t k) const { return theta_[k]; }

  /// Each entry reduced into [0, 2 pi).
  PhaseVector canonical() const;

 private:
  std::vector<double> theta_;
};

/// Lower-triangular (i >= j) probability matrix over unordered mode pairs.
class CoincidenceMatrix {
 public:
  /// Validates zero upper triangle, non-negativity and unit mass (1e-12).
  explicit CoincidenceMatrix(RealMatrix probs);

  const RealMatrix& probs() const { return probs_; }
  int d() const { return static_cast<int>(probs_.rows()); }
  double operator()(int i, int j) const { return probs_(i, j); }

  /// Cells flattened row-major over i >= j: (0,0), (1,0), (1,1), (2,0), ...
  std::vector<double> lower_triangle() const;
  static CoincidenceMatrix from_lower_triangle(std::span<const double> cells, int d);

 private:
  RealMatrix probs_;
};

/// Sampled coincidence counts over the lower triangle.
class EmpiricalCounts {
 public:
  EmpiricalCounts(int d, std::vector<std::uint64_t> cells);

  int d() const { return d_; }
  std::uint64_t p() const { return p_; }
  /// Flattened lower-triangle counts in the same order as CoincidenceMatrix.
  const std::vector<std::uint64_t>& cells() const { return cells_; }
  std::uint64_t count(int i, int j) const;
  /// counts / p, lower-triangular.
  RealMatrix normalized() const;

 private:
  int d_;
  std::uint64_t p_;
  std::vector<std::uint64_t> cells_;
};

/// Index of cell (i, j), i >= j, in the flattened lower triangle.
inline int lower_index(int i, int j) { return i * (i + 1) / 2 + j; }

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre
/// matrix with the phases of diag(R) divided out. Deterministic in seed.
ModeUnitary haar_unitary(const ModeDim& dim, std::uint64_t seed);

/// diag(e^{i theta_k}) on the first n_ps modes, identity on the rest.
ModeUnitary phase_unitary(const PhaseVector& theta, const ModeDim& dim);

/// Psi -> U Psi U^T with U = U0 * U_theta.
TwoPhotonState evolve(const TwoPhotonState& state, const ModeUnitary& u0, const PhaseVector& theta);

/// probs(i, j) = 2|Psi_ij|^2 for i > j, |Psi_ii|^2 on the diagonal.
CoincidenceMatrix coincidence(const TwoPhotonState& state);

/// Multinomial draw of p outcomes by inverse CDF over the flattened lower
/// triangle.
EmpiricalCounts sample(const CoincidenceMatrix& pm, std::uint64_t p, std::uint64_t seed);

/// Total-variation distance between a distribution and normalized counts.
double total_variation(const CoincidenceMatrix& pm, const EmpiricalCounts& counts);

// "QCU1" unitary file: magic, d (u32), d^2 (re, im) f64 row-major, seed (u64).
void write_unitary(const std::filesystem::path& path, const ModeUnitary& u);
ModeUnitary read_unitary(const std::filesystem::path& path);

// "QCOB1" counts file: magic, d (u32), p (u64), d(d+1)/2 u64 counts.
void write_counts(const std::filesystem::path& path, const EmpiricalCounts& counts);
EmpiricalCounts read_counts(const std::filesystem::path& path);

}  // namespace qcnet
