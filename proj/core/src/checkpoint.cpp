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

#include "qcnet/binary_io.hpp"
#include "qcnet/error.hpp"
#include "qcnet/surrogate.hpp"

namespace qcnet {

namespace {

void write_tensor(BinaryWriter& w, const Tensor& t) {
  w.u32(static_cast<std::uint32_t>(t.rank()));
  for (auto e : t.shape()) w.u64(e);
  w.f64s(t.data());
}

Tensor read_tensor(BinaryReader& r, const std::string& what) {
  const std::uint32_t rank = r.u32();
  if (rank == 0 || rank > 8) throw IoError(what + ": implausible tensor rank");
  Tensor::Shape shape(rank);
  for (auto& e : shape) {
    e = r.u64();
    if (e == 0 || e > (1ULL << 32)) throw IoError(what + ": implausible tensor extent");
  }
  Tensor t(shape, 0.0);
  r.f64s(t.data());
  return t;
}

void write_tensors(BinaryWriter& w, const std::vector<Tensor>& ts) {
  for (const Tensor& t : ts) write_tensor(w, t);
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Surrogate& model, const AdamState* adam) {
  auto out = open_for_write(path);
  BinaryWriter w(out);
  w.magic("QCKP1");
  w.short_string(to_string(model.arch()));
  const ModeDim dim = model.dim();
  w.u64(static_cast<std::uint64_t>(dim.d()));
  w.u64(static_cast<std::uint64_t>(dim.n_ps()));
  w.u64(static_cast<std::uint64_t>(model.width()));
  w.f64(model.beta());
  w.u32(static_cast<std::uint32_t>(model.params().size()));
  write_tensors(w, model.params());
  if (adam) {
    w.u8(1);
    w.u64(adam->k);
    write_tensors(w, adam->m);
    write_tensors(w, adam->v);
  } else {
    w.u8(0);
  }
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  const std::string what = path.string();
  BinaryReader r(in, what);
  r.expect_magic("QCKP1");
  const Architecture arch = [&] {
    try {
      return parse_architecture(r.short_string());
    } catch (const ConfigError& e) {
      throw IoError(what + ": " + e.what());
    }
  }();
  const auto d = static_cast<int>(r.u64());
  const auto n_ps = static_cast<int>(r.u64());
  const auto width = static_cast<int>(r.u64());
  const double beta = r.f64();
  const std::uint32_t count = r.u32();

  Surrogate model = Surrogate::create(arch, ModeDim(d, n_ps), arch == Architecture::Vanilla ? 1 : width, beta, 0);
  if (count != model.params().size()) throw IoError(what + ": wrong tensor count for " + to_string(arch));
  for (auto& p : model.params()) {
    Tensor t = read_tensor(r, what);
    if (t.shape() != p.shape()) {
      throw IoError(what + ": tensor shape " + t.shape_string() + " does not match " + p.shape_string());
    }
    p = std::move(t);
  }
  Checkpoint ckpt{std::move(model), std::nullopt};
  if (r.u8() == 1) {
    AdamState s;
    s.k = r.u64();
    for (std::size_t i = 0; i < count; ++i) s.m.push_back(read_tensor(r, what));
    for (std::size_t i = 0; i < count; ++i) s.v.push_back(read_tensor(r, what));
    ckpt.adam = std::move(s);
  }
  return ckpt;
}

}  // namespace qcnet
