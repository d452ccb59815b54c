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

#include "qcnet/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qcnet/binary_io.hpp"
#include "qcnet/error.hpp"
#include "qcnet/random.hpp"

namespace qcnet {

ModeUnitary::ModeUnitary(ComplexMatrix matrix, std::uint64_t seed)
    : matrix_(std::move(matrix)), seed_(seed) {
  if (matrix_.rows() != matrix_.cols()) throw NumericError("unitary must be square");
  const double defect = unitarity_defect(matrix_);
  if (!(defect < 1e-12)) {
    throw NumericError("matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
}

double ModeUnitary::unitarity_defect(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return g.cwiseAbs().maxCoeff();
}

PhaseVector::PhaseVector(std::vector<double> theta) : theta_(std::move(theta)) {
  for (double t : theta_) {
    if (!std::isfinite(t)) throw NumericError("phase vector entries must be finite");
  }
}

PhaseVector PhaseVector::canonical() const {
  std::vector<double> out(theta_.size());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < theta_.size(); ++k) {
    double t = std::fmod(theta_[k], two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    out[k] = t;
  }
  return PhaseVector(std::move(out));
}

CoincidenceMatrix::CoincidenceMatrix(RealMatrix probs) : probs_(std::move(probs)) {
  const auto d = probs_.rows();
  if (probs_.cols() != d) throw NumericError("coincidence matrix must be square");
  double total = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double v = probs_(i, j);
      if (!std::isfinite(v)) throw NumericError("coincidence matrix has non-finite entries");
      if (i < j) {
        if (v != 0.0) throw NumericError("coincidence matrix must be lower-triangular");
      } else {
        if (v < 0.0) throw NumericError("coincidence matrix has negative entries");
        total += v;
      }
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw NumericError("coincidence matrix mass is " + std::to_string(total) + ", expected 1");
  }
}

std::vector<double> CoincidenceMatrix::lower_triangle() const {
  const int d = this->d();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(d * (d + 1) / 2));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) out.push_back(probs_(i, j));
  }
  return out;
}

CoincidenceMatrix CoincidenceMatrix::from_lower_triangle(std::span<const double> cells, int d) {
  if (cells.size() != static_cast<std::size_t>(d * (d + 1) / 2)) {
    throw NumericError("lower-triangle length does not match d");
  }
  RealMatrix m = RealMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) m(i, j) = cells[lower_index(i, j)];
  }
  return CoincidenceMatrix(std::move(m));
}

EmpiricalCounts::EmpiricalCounts(int d, std::vector<std::uint64_t> cells)
    : d_(d), p_(0), cells_(std::move(cells)) {
  if (cells_.size() != static_cast<std::size_t>(d * (d + 1) / 2)) {
    throw NumericError("count vector length does not match d");
  }
  p_ = std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
  if (p_ == 0) throw NumericError("empirical counts must contain at least one sample");
}

std::uint64_t EmpiricalCounts::count(int i, int j) const {
  if (i < j) return 0;
  return cells_[lower_index(i, j)];
}

RealMatrix EmpiricalCounts::normalized() const {
  RealMatrix m = RealMatrix::Zero(d_, d_);
  const double inv = 1.0 / static_cast<double>(p_);
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j <= i; ++j) m(i, j) = static_cast<double>(cells_[lower_index(i, j)]) * inv;
  }
  return m;
}

ModeUnitary haar_unitary(const ModeDim& dim, std::uint64_t seed) {
  const int d = dim.d();
  Xoshiro256 rng(seed);
  ComplexMatrix z(d, d);
  // Row-major fill so the draw order does not depend on Eigen's storage order.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(i, j) = Complex(re, im) / std::numbers::sqrt2;
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return ModeUnitary(std::move(q), seed);
}

ModeUnitary phase_unitary(const PhaseVector& theta, const ModeDim& dim) {
  if (theta.size() != static_cast<std::size_t>(dim.n_ps())) {
    throw NumericError("phase vector length " + std::to_string(theta.size()) +
                       " does not match n_ps " + std::to_string(dim.n_ps()));
  }
  ComplexMatrix m = ComplexMatrix::Identity(dim.d(), dim.d());
  for (int k = 0; k < dim.n_ps(); ++k) m(k, k) = std::polar(1.0, theta[k]);
  return ModeUnitary(std::move(m));
}

TwoPhotonState evolve(const TwoPhotonState& state, const ModeUnitary& u0, const PhaseVector& theta) {
  const int d = state.d();
  if (u0.d() != d) {
    throw NumericError("dimension mismatch: state d=" + std::to_string(d) +
                       ", unitary d=" + std::to_string(u0.d()));
  }
  if (theta.size() > static_cast<std::size_t>(d)) {
    throw NumericError("more phases than modes");
  }
  // U = U0 * D with D diagonal: scale the columns of U0.
  ComplexMatrix u = u0.matrix();
  for (std::size_t k = 0; k < theta.size(); ++k) u.col(static_cast<Eigen::Index>(k)) *= std::polar(1.0, theta[k]);
  ComplexMatrix out = u * state.amplitudes() * u.transpose();
  out = (0.5 * (out + out.transpose())).eval();
  // Restore unit norm lost to rounding.
  out /= out.norm();
  return TwoPhotonState(std::move(out));
}

CoincidenceMatrix coincidence(const TwoPhotonState& state) {
  const int d = state.d();
  const auto& a = state.amplitudes();
  RealMatrix p = RealMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) p(i, j) = 2.0 * std::norm(a(i, j));
    p(i, i) = std::norm(a(i, i));
  }
  return CoincidenceMatrix(std::move(p));
}

EmpiricalCounts sample(const CoincidenceMatrix& pm, std::uint64_t p, std::uint64_t seed) {
  if (p == 0) throw ConfigError("sample count p must be positive");
  const auto cells = pm.lower_triangle();
  std::vector<double> cdf(cells.size());
  std::partial_sum(cells.begin(), cells.end(), cdf.begin());
  const double total = cdf.back();
  // Last cell with positive mass; guards u * total landing on the final edge.
  std::size_t last = cells.size() - 1;
  while (last > 0 && cells[last] <= 0.0) --last;

  Xoshiro256 rng(seed);
  std::vector<std::uint64_t> counts(cells.size(), 0);
  for (std::uint64_t s = 0; s < p; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx > last) idx = last;
    ++counts[idx];
  }
  return EmpiricalCounts(pm.d(), std::move(counts));
}

double total_variation(const CoincidenceMatrix& pm, const EmpiricalCounts& counts) {
  const auto cells = pm.lower_triangle();
  if (cells.size() != counts.cells().size()) throw NumericError("dimension mismatch in total_variation");
  const double inv = 1.0 / static_cast<double>(counts.p());
  double tv = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    tv += std::abs(cells[k] - static_cast<double>(counts.cells()[k]) * inv);
  }
  return 0.5 * tv;
}

void write_unitary(const std::filesystem::path& path, const ModeUnitary& u) {
  auto out = open_for_write(path);
  BinaryWriter w(out);
  const int d = u.d();
  w.magic("QCU1");
  w.u32(static_cast<std::uint32_t>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      w.f64(u.matrix()(i, j).real());
      w.f64(u.matrix()(i, j).imag());
    }
  }
  w.u64(u.seed());
}

ModeUnitary read_unitary(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  BinaryReader r(in, path.string());
  r.expect_magic("QCU1");
  const auto d = static_cast<int>(r.u32());
  if (d < 1 || d > 65536) throw IoError(path.string() + ": implausible dimension");
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = r.f64();
      const double im = r.f64();
      m(i, j) = Complex(re, im);
    }
  }
  const std::uint64_t seed = r.u64();
  return ModeUnitary(std::move(m), seed);
}

void write_counts(const std::filesystem::path& path, const EmpiricalCounts& counts) {
  auto out = open_for_write(path);
  BinaryWriter w(out);
  w.magic("QCOB1");
  w.u32(static_cast<std::uint32_t>(counts.d()));
  w.u64(counts.p());
  for (auto c : counts.cells()) w.u64(c);
}

EmpiricalCounts read_counts(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  BinaryReader r(in, path.string());
  r.expect_magic("QCOB1");
  const auto d = static_cast<int>(r.u32());
  if (d < 1 || d > 65536) throw IoError(path.string() + ": implausible dimension");
  const std::uint64_t p = r.u64();
  std::vector<std::uint64_t> cells(static_cast<std::size_t>(d * (d + 1) / 2));
  for (auto& c : cells) c = r.u64();
  EmpiricalCounts counts(d, std::move(cells));
  if (counts.p() != p) throw IoError(path.string() + ": header p disagrees with counts");
  return counts;
}

}  // namespace qcnet
