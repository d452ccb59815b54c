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

#include "qcnet/fock.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qcnet/error.hpp"

namespace qcnet {

ModeDim::ModeDim(int d, int n_ps) : d_(d), n_ps_(n_ps) {
  if (d < 2) throw ConfigError("mode dimension d must be >= 2, got " + std::to_string(d));
  if (n_ps < 1 || n_ps > d) {
    throw ConfigError("n_ps must satisfy 1 <= n_ps <= d, got " + std::to_string(n_ps));
  }
}

TwoPhotonState::TwoPhotonState(ComplexMatrix amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.rows() != amplitudes_.cols() || amplitudes_.rows() < 1) {
    throw NumericError("two-photon amplitude matrix must be square");
  }
  if (!amplitudes_.allFinite()) throw NumericError("two-photon amplitudes are not finite");
  const double asym = (amplitudes_ - amplitudes_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) throw NumericError("two-photon amplitudes are not symmetric");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-12) {
    throw NumericError("two-photon amplitudes do not have unit norm");
  }
}

ComplexVector coherent_vector(Complex alpha, int d) {
  if (d < 1) throw ConfigError("coherent_vector needs d >= 1");
  ComplexVector v(d);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  if (!std::isfinite(r)) throw NumericError("coherent amplitude is not finite");
  const double log_r = std::log(r);
  const double phase = std::arg(alpha);
  // log|v_m| = m log|alpha| - lgamma(m+1)/2; shift by the max before exp.
  RealVector log_mag(d);
  for (int m = 0; m < d; ++m) log_mag(m) = m * log_r - 0.5 * std::lgamma(m + 1.0);
  const double shift = log_mag.maxCoeff();
  for (int m = 0; m < d; ++m) {
    v(m) = std::polar(std::exp(log_mag(m) - shift), m * phase);
  }
  const double norm = v.norm();
  if (!std::isfinite(norm) || norm == 0.0) throw NumericError("coherent vector normalization failed");
  v /= norm;
  return v;
}

TwoPhotonState symmetrize(const ComplexMatrix& amplitudes) {
  if (amplitudes.rows() != amplitudes.cols()) throw NumericError("symmetrize needs a square matrix");
  ComplexMatrix s = amplitudes + amplitudes.transpose();
  const double norm = s.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("degenerate state");
  s /= norm;
  // Exact symmetry after rounding.
  s = (0.5 * (s + s.transpose())).eval();
  return TwoPhotonState(std::move(s));
}

TwoPhotonState build_initial_state(const InitialStateKind& kind, const ModeDim& dim) {
  const int d = dim.d();
  if (std::holds_alternative<Noon>(kind)) {
    ComplexMatrix m = ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
    return TwoPhotonState(std::move(m));
  }
  const auto& params = std::get<WeakCoherent>(kind).params;
  const ComplexVector c1 = coherent_vector(params.alpha1, d);
  const ComplexVector c2 = coherent_vector(params.alpha2, d);
  return symmetrize(c1 * c2.transpose());
}

TwoPhotonState fock_pair(int a, int b, int d) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(a, b) = 1.0;
  return symmetrize(m);
}

bool is_diagonal(const TwoPhotonState& state, double tol) {
  const auto& a = state.amplitudes();
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      if (i != j && std::abs(a(i, j)) > tol) return false;
    }
  }
  return true;
}

}  // namespace qcnet
