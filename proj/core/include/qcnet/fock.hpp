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

#include <complex>
#include <variant>

#include <Eigen/Dense>

namespace qcnet {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Number of photonic modes `d` and of controllable phase shifters `n_ps`.
/// Invariant: d >= 2 and 1 <= n_ps <= d.
class ModeDim {
 public:
  ModeDim(int d, int n_ps = 6);

  int d() const { return d_; }
  int n_ps() const { return n_ps_; }
  /// Number of unordered mode pairs i >= j, d(d+1)/2.
  int cells() const { return d_ * (d_ + 1) / 2; }

  friend bool operator==(const ModeDim&, const ModeDim&) = default;

 private:
  int d_;
  int n_ps_;
};

/// Symmetric, unit-Frobenius-norm amplitude matrix over mode pairs: entry
/// (i, j) is the amplitude for one photon in mode i and one in mode j.
class TwoPhotonState {
 public:
  /// Validates symmetry and norm to 1e-12; throws NumericError otherwise.
  explicit TwoPhotonState(ComplexMatrix amplitudes);

  const ComplexMatrix& amplitudes() const { return amplitudes_; }
  int d() const { return static_cast<int>(amplitudes_.rows()); }
  Complex operator()(int i, int j) const { return amplitudes_(i, j); }

 private:
  ComplexMatrix amplitudes_;
};

struct CoherentParams {
  Complex alpha1{2.0, 0.0};
  Complex alpha2{3.0, 0.0};
};

struct WeakCoherent {
  CoherentParams params{};
};

struct Noon {};

using InitialStateKind = std::variant<WeakCoherent, Noon>;

/// Truncated coherent vector v[m] proportional to alpha^m / sqrt(m!) for
/// m = 0..d-1, renormalized to unit 2-norm. Evaluated in log space.
ComplexVector coherent_vector(Complex alpha, int d);

/// (A + A^T) rescaled to unit Frobenius norm; throws on a degenerate result.
TwoPhotonState symmetrize(const ComplexMatrix& amplitudes);

TwoPhotonState build_initial_state(const InitialStateKind& kind, const ModeDim& dim);

/// Two photons in modes a and b (a may equal b), symmetrized.
TwoPhotonState fock_pair(int a, int b, int d);

/// True for states whose amplitude matrix is diagonal (NOON-type).
bool is_diagonal(const TwoPhotonState& state, double tol = 1e-14);

}  // namespace qcnet
