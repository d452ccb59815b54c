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

#include "qcnet/permanent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "qcnet/error.hpp"

namespace qcnet {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw ConfigError(std::string(what) + ": matrix must be square");
  if (m.rows() < 1) throw ConfigError(std::string(what) + ": empty matrix");
}

}  // namespace

Complex permanent_naive(const ComplexMatrix& m) {
  require_square(m, "permanent_naive");
  const auto n = static_cast<int>(m.rows());
  if (n > 9) throw ConfigError("permanent_naive: N=" + std::to_string(n) + " exceeds 9");
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex total = 0.0;
  do {
    Complex term = 1.0;
    for (int i = 0; i < n; ++i) term *= m(i, sigma[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

Complex permanent_ryser(const ComplexMatrix& m) {
  require_square(m, "permanent_ryser");
  const auto n = static_cast<int>(m.rows());
  if (n > 62) throw ConfigError("permanent_ryser: N too large");
  // row_sum[i] = sum of a(i, j) over columns j in the current subset S.
  ComplexVector row_sum = ComplexVector::Zero(n);
  Complex total = 0.0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    if (gray & bit) {
      row_sum += m.col(j);
    } else {
      row_sum -= m.col(j);
    }
    Complex prod = row_sum.prod();
    if (std::popcount(gray) % 2 == 1) prod = -prod;
    total += prod;
  }
  return (n % 2 == 1) ? -total : total;
}

void SubMatrixSpec::validate(int d) const {
  if (rows.size() != cols.size()) throw ConfigError("submatrix: rows and cols differ in length");
  if (rows.empty()) throw ConfigError("submatrix: no photons");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] < 0 || rows[k] >= d || cols[k] < 0 || cols[k] >= d) throw ConfigError("submatrix: mode out of range");
    if (k > 0 && rows[k] <= rows[k - 1]) throw ConfigError("submatrix: repeated or unsorted input modes are unsupported");
    if (k > 0 && cols[k] < cols[k - 1]) throw ConfigError("submatrix: outcome modes must be sorted");
  }
}

ComplexMatrix transfer_submatrix(const ModeUnitary& u, const SubMatrixSpec& spec) {
  spec.validate(u.d());
  const auto n = static_cast<Eigen::Index>(spec.rows.size());
  ComplexMatrix s(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      s(a, b) = u.matrix()(spec.cols[static_cast<std::size_t>(b)], spec.rows[static_cast<std::size_t>(a)]);
    }
  }
  return s;
}

double outcome_weight(const ModeUnitary& u, const Modes& inputs, const Modes& cols) {
  const ComplexMatrix s = transfer_submatrix(u, SubMatrixSpec{inputs, cols});
  double fact = 1.0;
  std::size_t run = 1;
  for (std::size_t k = 1; k < cols.size(); ++k) {
    run = cols[k] == cols[k - 1] ? run + 1 : 1;
    fact *= static_cast<double>(run);
  }
  return std::norm(permanent_ryser(s)) / fact;
}

std::size_t MultiPhotonDistribution::index_of(const Modes& outcome) const {
  const auto it = std::lower_bound(outcomes.begin(), outcomes.end(), outcome);
  if (it == outcomes.end() || *it != outcome) throw ConfigError("outcome not in the distribution support");
  return static_cast<std::size_t>(it - outcomes.begin());
}

std::vector<Modes> outcome_set(int n, int d) {
  if (n < 1 || n > d) throw ConfigError("outcome_set: need 1 <= N <= d");
  std::vector<Modes> out;
  Modes cur(static_cast<std::size_t>(n));
  const bool repeats = n == 2;
  // Odometer over non-decreasing (N = 2) or strictly increasing tuples.
  for (int k = 0; k < n; ++k) cur[static_cast<std::size_t>(k)] = repeats ? 0 : k;
  while (true) {
    out.push_back(cur);
    int k = n - 1;
    while (k >= 0) {
      const int limit = repeats ? d - 1 : d - n + k;
      if (cur[static_cast<std::size_t>(k)] < limit) break;
      --k;
    }
    if (k < 0) break;
    ++cur[static_cast<std::size_t>(k)];
    for (int r = k + 1; r < n; ++r) {
      cur[static_cast<std::size_t>(r)] = cur[static_cast<std::size_t>(r - 1)] + (repeats ? 0 : 1);
    }
  }
  return out;
}

MultiPhotonDistribution photon_distribution(const ModeUnitary& u, const Modes& inputs) {
  const int d = u.d();
  const auto n = static_cast<int>(inputs.size());
  SubMatrixSpec{inputs, inputs}.validate(d);
  MultiPhotonDistribution dist;
  dist.n = n;
  dist.d = d;
  dist.outcomes = outcome_set(n, d);
  dist.probs.reserve(dist.outcomes.size());
  double total = 0.0;
  for (const Modes& o : dist.outcomes) {
    dist.probs.push_back(outcome_weight(u, inputs, o));
    total += dist.probs.back();
  }
  if (!(total > 0.0)) throw NumericError("photon_distribution: zero total weight");
  for (double& p : dist.probs) p /= total;
  return dist;
}

double perm_loss(const MultiPhotonDistribution& pred, const ModeUnitary& u, const Modes& inputs,
                 const std::vector<Modes>& coords, double c) {
  double loss = 0.0;
  for (const Modes& o : coords) {
    const double r = pred.prob(o) - c * outcome_weight(u, inputs, o);
    loss += r * r;
  }
  return loss;
}

CrossCheck two_photon_cross_check(const ModeUnitary& u) {
  const int d = u.d();
  CrossCheck out;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const CoincidenceMatrix pm = coincidence(evolve(fock_pair(a, b, d), u, PhaseVector{}));
      const MultiPhotonDistribution dist = photon_distribution(u, {a, b});
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
          const double dev = std::abs(pm(i, j) - dist.prob({j, i}));
          if (i == j) {
            out.max_diag = std::max(out.max_diag, dev);
          } else {
            out.max_offdiag = std::max(out.max_offdiag, dev);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace qcnet
