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

#include "detail/init.hpp"
#include "qcnet/error.hpp"
#include "qcnet/surrogate.hpp"

namespace qcnet {

VanillaWeights VanillaWeights::init(const VanillaHyper& hyper, std::uint64_t seed) {
  ModeDim(hyper.d, hyper.n_ps);
  Xoshiro256 rng(seed);
  const auto dd = static_cast<std::size_t>(hyper.d * hyper.d);
  const auto n = static_cast<std::size_t>(hyper.n_ps);
  VanillaWeights w;
  w.hyper = hyper;
  w.w = detail::uniform_init({dd, n}, n, rng);
  w.bias = detail::uniform_init({dd}, n, rng);
  return w;
}

std::uint64_t param_count(const VanillaHyper& h) {
  const auto dd = static_cast<std::uint64_t>(h.d) * static_cast<std::uint64_t>(h.d);
  return dd * static_cast<std::uint64_t>(h.n_ps) + dd;
}

Var vanilla_forward(const VanillaHyper& hyper, Var w, Var bias, Var theta) {
  const auto d = static_cast<std::size_t>(hyper.d);
  if (theta.value().size() != static_cast<std::size_t>(hyper.n_ps)) {
    throw NumericError("vanilla: phase vector length mismatch");
  }
  return detail::in_layer("dense", [&] {
    const Var logits = ad::add(ad::matmul(w, theta), bias);
    const Var q = ad::reshape(ad::softmax(logits), {d, d});
    return normalize_mass(ad::select_lower(q));
  });
}

CoincidenceMatrix vanilla_forward(const VanillaWeights& w, const PhaseVector& theta) {
  Tape tape;
  const Var out = vanilla_forward(w.hyper, tape.constant_ref(w.w), tape.constant_ref(w.bias),
                                  tape.constant(Tensor::vector(theta.values())));
  return to_coincidence(out.value());
}

}  // namespace qcnet
