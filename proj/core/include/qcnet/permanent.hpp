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
#include <vector>

#include "qcnet/circuit.hpp"

namespace qcnet {

/// Sum over permutations. N <= 9.
Complex permanent_naive(const ComplexMatrix& m);

/// Ryser inclusion-exclusion with Gray-code subset order.
Complex permanent_ryser(const ComplexMatrix& m);

using Modes = std::vector<int>;

/// Rows are input modes, columns are detected modes.
struct SubMatrixSpec {
  Modes rows;
  Modes cols;

  /// rows strictly increasing; cols non-decreasing; equal sizes; all < d.
  void validate(int d) const;
};

/// Entries T(rows[a], cols[b]) of the single-photon transfer matrix T = U^T,
/// so that a photon entering mode r leaves in mode c with amplitude U(c, r).
/// Repeated columns are repeated.
ComplexMatrix transfer_submatrix(const ModeUnitary& u, const SubMatrixSpec& spec);

/// |Per|^2 / prod_m n_m! for the outcome `cols` (multiplicities n_m).
double outcome_weight(const ModeUnitary& u, const Modes& inputs, const Modes& cols);

/// N-photon output distribution for collision-free inputs. Outcomes are
/// strictly increasing tuples in lexicographic order; for N = 2 the bunched
/// pairs (m, m) are included as well, so the list is every non-decreasing
/// pair.
struct MultiPhotonDistribution {
  int n = 0;
  int d = 0;
  std::vector<Modes> outcomes;
  std::vector<double> probs;

  /// Index of `outcome` in `outcomes`; throws if absent.
  std::size_t index_of(const Modes& outcome) const;
  double prob(const Modes& outcome) const { return probs[index_of(outcome)]; }
};

/// Enumeration order used by photon_distribution.
std::vector<Modes> outcome_set(int n, int d);

MultiPhotonDistribution photon_distribution(const ModeUnitary& u, const Modes& inputs);

/// Sum over coords of (pred(o) - c * outcome_weight(o))^2.
double perm_loss(const MultiPhotonDistribution& pred, const ModeUnitary& u, const Modes& inputs,
                 const std::vector<Modes>& coords, double c);

struct CrossCheck {
  double max_offdiag = 0.0;  // over all inputs a < b and outcomes i > j
  double max_diag = 0.0;     // bunched outcomes (i, i)
};

/// Two-photon matrix evolution versus permanents for every input pair a < b.
CrossCheck two_photon_cross_check(const ModeUnitary& u);

}  // namespace qcnet
