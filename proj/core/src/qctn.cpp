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

#include <cmath>
#include <string>

#include "detail/init.hpp"
#include "qcnet/error.hpp"
#include "qcnet/surrogate.hpp"

namespace qcnet {

namespace {

void check(const QctnHyper& h) {
  ModeDim(h.d, h.n_ps);
  if (h.bond < 1) throw ConfigError("qctn bond dimension must be >= 1");
  if (!(h.beta >= 0.0) || !std::isfinite(h.beta)) throw ConfigError("qctn beta must be finite and >= 0");
}

}  // namespace

QctnWeights QctnWeights::init(const QctnHyper& hyper, std::uint64_t seed) {
  check(hyper);
  Xoshiro256 rng(seed);
  const auto d = static_cast<std::size_t>(hyper.d);
  const auto b = static_cast<std::size_t>(hyper.bond);
  const auto f = static_cast<std::size_t>(2 * hyper.n_ps);
  QctnWeights w;
  w.hyper = hyper;
  w.w_a = detail::uniform_init({f, d, b}, f, rng);
  w.w_b = detail::uniform_init({f, d, b}, f, rng);
  const double gain = detail::tail_gain(hyper.beta, 0.25);
  w.o_re_a = detail::uniform_init({d, d, b}, d, rng, gain);
  w.o_re_b = detail::uniform_init({d, d, b}, d, rng, gain);
  w.o_im_a = detail::uniform_init({d, d, b}, d, rng, gain);
  w.o_im_b = detail::uniform_init({d, d, b}, d, rng, gain);
  return w;
}

QctnWeights QctnWeights::zeros(const QctnHyper& hyper) {
  check(hyper);
  const auto d = static_cast<std::size_t>(hyper.d);
  const auto b = static_cast<std::size_t>(hyper.bond);
  const auto f = static_cast<std::size_t>(2 * hyper.n_ps);
  const Tensor mps({f, d, b}, 0.0);
  const Tensor mpo({d, d, b}, 0.0);
  return {hyper, mps, mps, mpo, mpo, mpo, mpo};
}

std::uint64_t param_count(const QctnHyper& h) {
  const auto n = static_cast<std::uint64_t>(h.n_ps);
  const auto b = static_cast<std::uint64_t>(h.bond);
  const auto d = static_cast<std::uint64_t>(h.d);
  return 4 * n * d * b + 4 * d * d * b;
}

int choose_bond_dim(int d) {
  if (d < 2) throw ConfigError("choose_bond_dim needs d >= 2");
  return static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
}

QctnPathways qctn_forward_detail(const QctnHyper& hyper, std::span<const Var> w, Var theta) {
  if (w.size() != 6) throw NumericError("qctn: expected 6 weight tensors");
  if (theta.value().size() != static_cast<std::size_t>(hyper.n_ps)) {
    throw NumericError("qctn: phase vector has " + std::to_string(theta.value().size()) + " entries, expected " +
                       std::to_string(hyper.n_ps));
  }
  const Var f = detail::in_layer("feature", [&] { return feature_map(theta); });
  // MPS generator: chi[i, a] = relu(sum_s W[s, i, a] f[s]), one site per photon.
  const Var chi_a = detail::in_layer("mps", [&] { return ad::relu(ad::einsum("sia,s->ia", w[0], f)); });
  const Var chi_b = detail::in_layer("mps", [&] { return ad::relu(ad::einsum("sia,s->ia", w[1], f)); });
  // MPO acts bond-channel-wise: A'[i, a] = sum_j O[j, i, a] chi[j, a].
  auto pathway = [&](Var o_a, Var o_b) {
    const Var a = ad::einsum("jia,ja->ia", o_a, chi_a);
    const Var b = ad::einsum("jia,ja->ia", o_b, chi_b);
    return ad::einsum("ia,ja->ij", a, b);
  };
  QctnPathways out;
  out.re_raw = detail::in_layer("real mpo", [&] { return pathway(w[2], w[3]); });
  out.im_raw = detail::in_layer("imaginary mpo", [&] { return pathway(w[4], w[5]); });
  const Var re = ad::add(out.re_raw, ad::transpose(out.re_raw));
  const Var im = ad::add(out.im_raw, ad::transpose(out.im_raw));
  out.probs = quantum_tail(re, im, hyper.beta);
  return out;
}

Var qctn_forward(const QctnHyper& hyper, std::span<const Var> w, Var theta) {
  return qctn_forward_detail(hyper, w, theta).probs;
}

CoincidenceMatrix qctn_forward(const QctnWeights& w, const PhaseVector& theta) {
  Tape tape;
  const std::vector<Var> vars{tape.constant_ref(w.w_a),    tape.constant_ref(w.w_b),
                              tape.constant_ref(w.o_re_a), tape.constant_ref(w.o_re_b),
                              tape.constant_ref(w.o_im_a), tape.constant_ref(w.o_im_b)};
  return to_coincidence(qctn_forward(w.hyper, vars, tape.constant(Tensor::vector(theta.values()))).value());
}

}  // namespace qcnet
