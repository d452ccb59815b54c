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

#include "qcnet/surrogate.hpp"

#include <cmath>
#include <numbers>

#include "qcnet/error.hpp"

namespace qcnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

std::vector<double> feature_map(const PhaseVector& theta) {
  const std::size_t n = theta.size();
  std::vector<double> f(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = wrap(theta[k]);
    f[k] = std::cos(t);
    f[n + k] = std::sin(t);
  }
  return f;
}

Var wrap_phase(Var theta) {
  Tensor y = theta.value();
  for (double& t : y.data()) t = wrap(t);
  return theta.tape().record("wrap_phase", std::move(y), {theta},
                             [](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                                std::span<Tensor* const> gin) {
                               if (!gin[0]) return;
                               for (std::size_t i = 0; i < g.size(); ++i) (*gin[0])[i] += g[i];
                             });
}

Var feature_map(Var theta) {
  const Var t = wrap_phase(theta);
  return ad::concat(ad::cos(t), ad::sin(t));
}

Var quantum_tail(Var re, Var im, double beta) {
  try {
    const Var m = ad::add(ad::square(re), ad::square(im));
    const Var q = ad::softmax(ad::scale(m, beta));
    return ad::fold_lower(q);
  } catch (const NumericError& e) {
    throw NumericError(std::string("normalization layer: ") + e.what());
  }
}

Var normalize_mass(Var a) {
  double s = 0.0;
  for (double v : a.value().data()) s += v;
  if (!(s > 0.0)) throw NumericError("normalize_mass: non-positive total");
  Tensor y = a.value();
  for (double& v : y.data()) v /= s;
  return a.tape().record("normalize_mass", std::move(y), {a},
                         [s](const Tensor& out, const Tensor& g, std::span<const Tensor* const>,
                             std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           double dot = 0.0;
                           for (std::size_t i = 0; i < out.size(); ++i) dot += g[i] * out[i];
                           for (std::size_t i = 0; i < out.size(); ++i) (*gin[0])[i] += (g[i] - dot) / s;
                         });
}

CoincidenceMatrix to_coincidence(const Tensor& probs) {
  if (probs.rank() != 2 || probs.extent(0) != probs.extent(1)) {
    throw NumericError("to_coincidence: expected a square matrix, got " + probs.shape_string());
  }
  const auto d = static_cast<Eigen::Index>(probs.extent(0));
  RealMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = probs.at(i, j);
  }
  return CoincidenceMatrix(std::move(m));
}

Tensor to_tensor(const RealMatrix& m) {
  Tensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) t.at(i, j) = m(i, j);
  }
  return t;
}

std::string to_string(Architecture arch) {
  switch (arch) {
    case Architecture::Qcnn:
      return "qcnn";
    case Architecture::Qctn:
      return "qctn";
    case Architecture::Vanilla:
      return "vanilla";
  }
  return "unknown";
}

Architecture parse_architecture(const std::string& name) {
  if (name == "qcnn") return Architecture::Qcnn;
  if (name == "qctn") return Architecture::Qctn;
  if (name == "vanilla") return Architecture::Vanilla;
  throw ConfigError("unknown architecture '" + name + "' (expected qcnn, qctn or vanilla)");
}

Surrogate::Surrogate(QcnnWeights w)
    : hyper_(w.hyper), params_{std::move(w.w0), std::move(w.w_re), std::move(w.w_im)} {}

Surrogate::Surrogate(QctnWeights w)
    : hyper_(w.hyper),
      params_{std::move(w.w_a),    std::move(w.w_b),    std::move(w.o_re_a),
              std::move(w.o_re_b), std::move(w.o_im_a), std::move(w.o_im_b)} {}

Surrogate::Surrogate(VanillaWeights w) : hyper_(w.hyper), params_{std::move(w.w), std::move(w.bias)} {}

Surrogate Surrogate::create(Architecture arch, const ModeDim& dim, int width, double beta, std::uint64_t seed) {
  switch (arch) {
    case Architecture::Qcnn:
      return Surrogate(QcnnWeights::init({dim.d(), dim.n_ps(), width, beta}, seed));
    case Architecture::Qctn:
      return Surrogate(QctnWeights::init({dim.d(), dim.n_ps(), width, beta}, seed));
    case Architecture::Vanilla:
      return Surrogate(VanillaWeights::init({dim.d(), dim.n_ps()}, seed));
  }
  throw ConfigError("unknown architecture");
}

Architecture Surrogate::arch() const {
  switch (hyper_.index()) {
    case 0:
      return Architecture::Qcnn;
    case 1:
      return Architecture::Qctn;
    default:
      return Architecture::Vanilla;
  }
}

ModeDim Surrogate::dim() const {
  return std::visit([](const auto& h) { return ModeDim(h.d, h.n_ps); }, hyper_);
}

double Surrogate::beta() const {
  if (const auto* h = std::get_if<QcnnHyper>(&hyper_)) return h->beta;
  if (const auto* h = std::get_if<QctnHyper>(&hyper_)) return h->beta;
  return 1.0;
}

int Surrogate::width() const {
  if (const auto* h = std::get_if<QcnnHyper>(&hyper_)) return h->hidden;
  if (const auto* h = std::get_if<QctnHyper>(&hyper_)) return h->bond;
  return 0;
}

std::uint64_t Surrogate::param_count() const {
  return std::visit([](const auto& h) { return qcnet::param_count(h); }, hyper_);
}

Var Surrogate::forward(Tape& tape, std::span<const Var> w, Var theta) const {
  (void)tape;
  if (w.size() != params_.size()) throw NumericError("surrogate forward: wrong number of weight tensors");
  if (const auto* h = std::get_if<QcnnHyper>(&hyper_)) return qcnn_forward(*h, w[0], w[1], w[2], theta);
  if (const auto* h = std::get_if<QctnHyper>(&hyper_)) return qctn_forward(*h, w, theta);
  return vanilla_forward(std::get<VanillaHyper>(hyper_), w[0], w[1], theta);
}

CoincidenceMatrix Surrogate::predict(const PhaseVector& theta) const {
  Tape tape;
  std::vector<Var> w;
  for (const Tensor& p : params_) w.push_back(tape.constant_ref(p));
  const Var t = tape.constant(Tensor::vector(theta.values()));
  return to_coincidence(forward(tape, w, t).value());
}

}  // namespace qcnet
