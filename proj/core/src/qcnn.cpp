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

#include <string>

#include "detail/init.hpp"
#include "qcnet/error.hpp"
#include "qcnet/surrogate.hpp"

namespace qcnet {

namespace {

void check(const QcnnHyper& h) {
  ModeDim(h.d, h.n_ps);
  if (h.hidden < 1) throw ConfigError("qcnn hidden width must be >= 1");
  if (!(h.beta >= 0.0) || !std::isfinite(h.beta)) throw ConfigError("qcnn beta must be finite and >= 0");
}

}  // namespace

QcnnWeights QcnnWeights::init(const QcnnHyper& hyper, std::uint64_t seed) {
  check(hyper);
  Xoshiro256 rng(seed);
  const auto l = static_cast<std::size_t>(hyper.hidden);
  const auto f = static_cast<std::size_t>(2 * hyper.n_ps);
  const auto dd = static_cast<std::size_t>(hyper.d * hyper.d);
  QcnnWeights w;
  w.hyper = hyper;
  w.w0 = detail::uniform_init({l, f}, f, rng);
  const double gain = detail::tail_gain(hyper.beta, 0.5);
  w.w_re = detail::uniform_init({dd, l}, l, rng, gain);
  w.w_im = detail::uniform_init({dd, l}, l, rng, gain);
  return w;
}

QcnnWeights QcnnWeights::zeros(const QcnnHyper& hyper) {
  check(hyper);
  const auto l = static_cast<std::size_t>(hyper.hidden);
  const auto dd = static_cast<std::size_t>(hyper.d * hyper.d);
  return {hyper, Tensor({l, static_cast<std::size_t>(2 * hyper.n_ps)}, 0.0), Tensor({dd, l}, 0.0),
          Tensor({dd, l}, 0.0)};
}

std::uint64_t param_count(const QcnnHyper& h) {
  const auto n = static_cast<std::uint64_t>(h.n_ps);
  const auto l = static_cast<std::uint64_t>(h.hidden);
  const auto d = static_cast<std::uint64_t>(h.d);
  return 2 * n * l + 2 * l * d * d;
}

Var qcnn_forward(const QcnnHyper& hyper, Var w0, Var w_re, Var w_im, Var theta) {
  const auto d = static_cast<std::size_t>(hyper.d);
  if (theta.value().size() != static_cast<std::size_t>(hyper.n_ps)) {
    throw NumericError("qcnn: phase vector has " + std::to_string(theta.value().size()) + " entries, expected " +
                       std::to_string(hyper.n_ps));
  }
  const Var f = detail::in_layer("feature", [&] { return feature_map(theta); });
  const Var chi = detail::in_layer("hidden", [&] { return ad::relu(ad::matmul(w0, f)); });
  auto pathway = [&](Var w) {
    const Var x = ad::reshape(ad::matmul(w, chi), {d, d});
    return ad::add(x, ad::transpose(x));
  };
  const Var re = detail::in_layer("real pathway", [&] { return pathway(w_re); });
  const Var im = detail::in_layer("imaginary pathway", [&] { return pathway(w_im); });
  return quantum_tail(re, im, hyper.beta);
}

CoincidenceMatrix qcnn_forward(const QcnnWeights& w, const PhaseVector& theta) {
  Tape tape;
  const Var out = qcnn_forward(w.hyper, tape.constant_ref(w.w0), tape.constant_ref(w.w_re),
                               tape.constant_ref(w.w_im), tape.constant(Tensor::vector(theta.values())));
  return to_coincidence(out.value());
}

}  // namespace qcnet
