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

#include "qcnet/tape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qcnet/error.hpp"

namespace qcnet {

Var Tape::push(Node node, bool owned) {
  nodes_.push_back(std::move(node));
  Node& n = nodes_.back();
  if (owned) n.value = &n.owned;
  return Var(this, nodes_.size() - 1);
}

Var Tape::variable(Tensor value) {
  Node n;
  n.owned = std::move(value);
  n.op = "variable";
  n.needs_grad = true;
  return push(std::move(n), true);
}

Var Tape::variable_ref(const Tensor& value) {
  Node n;
  n.value = &value;
  n.op = "variable";
  n.needs_grad = true;
  return push(std::move(n), false);
}

Var Tape::constant(Tensor value) {
  Node n;
  n.owned = std::move(value);
  n.op = "constant";
  return push(std::move(n), true);
}

Var Tape::constant_ref(const Tensor& value) {
  Node n;
  n.value = &value;
  n.op = "constant";
  return push(std::move(n), false);
}

Var Tape::record(std::string_view op, Tensor value, std::initializer_list<Var> inputs, Pullback pullback) {
  if (!value.all_finite()) {
    throw NumericError("non-finite value produced by primitive '" + std::string(op) + "'");
  }
  Node n;
  n.owned = std::move(value);
  n.op = op;
  n.pullback = std::move(pullback);
  for (const Var& v : inputs) {
    if (&v.tape() != this) throw NumericError("primitive '" + std::string(op) + "' mixes tapes");
    n.inputs.push_back(v.id());
    n.needs_grad = n.needs_grad || nodes_[v.id()].needs_grad;
  }
  return push(std::move(n), true);
}

Tensor& Tape::grad_slot(Node& node) {
  if (!node.has_grad) {
    node.grad = Tensor(node.value->shape(), 0.0);
    node.has_grad = true;
  }
  return node.grad;
}

void Tape::backward(Var output) {
  if (output.value().size() != 1) {
    throw NumericError("backward() without a seed needs a scalar output, got " + output.value().shape_string());
  }
  backward(output, Tensor(output.shape(), 1.0));
}

void Tape::backward(Var output, const Tensor& seed) {
  if (seed.shape() != output.shape()) throw NumericError("backward seed shape mismatch");
  for (auto& n : nodes_) {
    n.has_grad = false;
    n.grad = Tensor();
  }
  Node& out = nodes_[output.id()];
  grad_slot(out) = seed;
  std::vector<const Tensor*> in_values;
  std::vector<Tensor*> in_grads;
  for (std::size_t i = output.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.needs_grad || !n.has_grad || !n.pullback) continue;
    in_values.clear();
    in_grads.clear();
    for (std::size_t id : n.inputs) {
      Node& in = nodes_[id];
      in_values.push_back(in.value);
      in_grads.push_back(in.needs_grad ? &grad_slot(in) : nullptr);
    }
    n.pullback(*n.value, n.grad, in_values, in_grads);
  }
}

Tensor Tape::grad(Var v) const {
  const Node& n = nodes_[v.id()];
  if (!n.has_grad) return Tensor(n.value->shape(), 0.0);
  return n.grad;
}

namespace ad {

namespace {

void require_same_shape(std::string_view op, const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) {
    throw NumericError(std::string(op) + ": shape mismatch " + a.shape_string() + " vs " + b.shape_string());
  }
}

void require_square(std::string_view op, const Tensor& a) {
  if (a.rank() != 2 || a.extent(0) != a.extent(1)) {
    throw NumericError(std::string(op) + ": expected a square matrix, got " + a.shape_string());
  }
}

template <typename F, typename DF>
Var unary(std::string_view op, Var a, F f, DF df) {
  const Tensor& x = a.value();
  Tensor y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return a.tape().record(op, std::move(y), {a},
                         [df](const Tensor& out, const Tensor& g, std::span<const Tensor* const> in,
                              std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           const Tensor& xv = *in[0];
                           Tensor& gx = *gin[0];
                           for (std::size_t i = 0; i < xv.size(); ++i) gx[i] += g[i] * df(xv[i], out[i]);
                         });
}

// Einstein summation over explicit letter lists: out += a * b.
struct EinsumPlan {
  std::string a, b, out;
};

EinsumPlan parse_einsum(std::string_view spec) {
  const auto comma = spec.find(',');
  const auto arrow = spec.find("->");
  if (comma == std::string_view::npos || arrow == std::string_view::npos || comma > arrow) {
    throw NumericError("einsum: malformed spec '" + std::string(spec) + "'");
  }
  EinsumPlan p{std::string(spec.substr(0, comma)), std::string(spec.substr(comma + 1, arrow - comma - 1)),
               std::string(spec.substr(arrow + 2))};
  for (const std::string* s : {&p.a, &p.b, &p.out}) {
    for (std::size_t i = 0; i < s->size(); ++i) {
      if ((*s)[i] < 'a' || (*s)[i] > 'z' || s->find((*s)[i], i + 1) != std::string::npos) {
        throw NumericError("einsum: letters must be distinct lowercase per operand in '" + std::string(spec) + "'");
      }
    }
  }
  return p;
}

void einsum_accumulate(const std::string& la, const Tensor& a, const std::string& lb, const Tensor& b,
                       const std::string& lo, Tensor& out, const std::array<std::size_t, 26>& extent) {
  std::string letters;
  for (const std::string* s : {&lo, &la, &lb}) {
    for (char c : *s) {
      if (letters.find(c) == std::string::npos) letters.push_back(c);
    }
  }
  const std::size_t n = letters.size();
  auto strides_for = [&](const std::string& l, const Tensor::Shape& shape) {
    std::vector<std::size_t> st(n, 0);
    std::size_t s = 1;
    for (std::size_t k = l.size(); k-- > 0;) {
      st[letters.find(l[k])] = s;
      s *= shape[k];
    }
    return st;
  };
  const auto sa = strides_for(la, a.shape());
  const auto sb = strides_for(lb, b.shape());
  const auto so = strides_for(lo, out.shape());
  std::vector<std::size_t> ext(n);
  for (std::size_t k = 0; k < n; ++k) ext[k] = extent[letters[k] - 'a'];

  // Odometer over all letters; innermost letter varies fastest.
  std::vector<std::size_t> idx(n, 0);
  std::size_t ia = 0, ib = 0, io = 0;
  const std::size_t inner = n - 1;
  const std::size_t inner_ext = ext[inner];
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  while (true) {
    for (std::size_t t = 0; t < inner_ext; ++t) {
      po[io + t * so[inner]] += pa[ia + t * sa[inner]] * pb[ib + t * sb[inner]];
    }
    std::size_t k = inner;
    while (k-- > 0) {
      ++idx[k];
      ia += sa[k];
      ib += sb[k];
      io += so[k];
      if (idx[k] < ext[k]) break;
      ia -= sa[k] * ext[k];
      ib -= sb[k] * ext[k];
      io -= so[k] * ext[k];
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
}

}  // namespace

Var add(Var a, Var b) {
  require_same_shape("add", a.value(), b.value());
  Tensor y = a.value();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += b.value()[i];
  return a.tape().record("add", std::move(y), {a, b},
                         [](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                            std::span<Tensor* const> gin) {
                           for (Tensor* gx : gin) {
                             if (!gx) continue;
                             for (std::size_t i = 0; i < g.size(); ++i) (*gx)[i] += g[i];
                           }
                         });
}

Var sub(Var a, Var b) {
  require_same_shape("sub", a.value(), b.value());
  Tensor y = a.value();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= b.value()[i];
  return a.tape().record("sub", std::move(y), {a, b},
                         [](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                            std::span<Tensor* const> gin) {
                           if (gin[0]) {
                             for (std::size_t i = 0; i < g.size(); ++i) (*gin[0])[i] += g[i];
                           }
                           if (gin[1]) {
                             for (std::size_t i = 0; i < g.size(); ++i) (*gin[1])[i] -= g[i];
                           }
                         });
}

Var mul(Var a, Var b) {
  require_same_shape("mul", a.value(), b.value());
  Tensor y = a.value();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= b.value()[i];
  return a.tape().record("mul", std::move(y), {a, b},
                         [](const Tensor&, const Tensor& g, std::span<const Tensor* const> in,
                            std::span<Tensor* const> gin) {
                           if (gin[0]) {
                             for (std::size_t i = 0; i < g.size(); ++i) (*gin[0])[i] += g[i] * (*in[1])[i];
                           }
                           if (gin[1]) {
                             for (std::size_t i = 0; i < g.size(); ++i) (*gin[1])[i] += g[i] * (*in[0])[i];
                           }
                         });
}

Var scale(Var a, double s) {
  Tensor y = a.value();
  for (double& v : y.data()) v *= s;
  return a.tape().record("scale", std::move(y), {a},
                         [s](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                             std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           for (std::size_t i = 0; i < g.size(); ++i) (*gin[0])[i] += s * g[i];
                         });
}

Var matmul(Var a, Var b) {
  const Tensor& x = a.value();
  const Tensor& w = b.value();
  const bool vec = w.rank() == 1;
  if (x.rank() != 2 || (w.rank() != 1 && w.rank() != 2) || x.extent(1) != w.extent(0)) {
    throw NumericError("matmul: shape mismatch " + x.shape_string() + " vs " + w.shape_string());
  }
  const std::size_t m = x.extent(0), k = x.extent(1), n = vec ? 1 : w.extent(1);
  Tensor y(vec ? Tensor::Shape{m} : Tensor::Shape{m, n}, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* xr = &x[i * k];
    double* yr = &y[i * n];
    for (std::size_t t = 0; t < k; ++t) {
      const double xv = xr[t];
      const double* wr = &w[t * n];
      for (std::size_t j = 0; j < n; ++j) yr[j] += xv * wr[j];
    }
  }
  return a.tape().record("matmul", std::move(y), {a, b},
                         [m, k, n](const Tensor&, const Tensor& g, std::span<const Tensor* const> in,
                                   std::span<Tensor* const> gin) {
                           const Tensor& xv = *in[0];
                           const Tensor& wv = *in[1];
                           if (gin[0]) {
                             Tensor& gx = *gin[0];
                             for (std::size_t i = 0; i < m; ++i) {
                               for (std::size_t t = 0; t < k; ++t) {
                                 double s = 0.0;
                                 for (std::size_t j = 0; j < n; ++j) s += g[i * n + j] * wv[t * n + j];
                                 gx[i * k + t] += s;
                               }
                             }
                           }
                           if (gin[1]) {
                             Tensor& gw = *gin[1];
                             for (std::size_t i = 0; i < m; ++i) {
                               for (std::size_t t = 0; t < k; ++t) {
                                 const double xv_it = xv[i * k + t];
                                 for (std::size_t j = 0; j < n; ++j) gw[t * n + j] += xv_it * g[i * n + j];
                               }
                             }
                           }
                         });
}

Var einsum(std::string_view spec, Var a, Var b) {
  const EinsumPlan plan = parse_einsum(spec);
  const Tensor& x = a.value();
  const Tensor& w = b.value();
  if (plan.a.size() != x.rank() || plan.b.size() != w.rank()) {
    throw NumericError("einsum '" + std::string(spec) + "': operand ranks " + x.shape_string() + " and " +
                       w.shape_string() + " do not match the spec");
  }
  std::array<std::size_t, 26> extent{};
  auto bind = [&](const std::string& l, const Tensor& t) {
    for (std::size_t k = 0; k < l.size(); ++k) {
      auto& e = extent[l[k] - 'a'];
      if (e != 0 && e != t.extent(k)) {
        throw NumericError("einsum '" + std::string(spec) + "': inconsistent extent for '" + l[k] + "' in " +
                           x.shape_string() + " vs " + w.shape_string());
      }
      e = t.extent(k);
    }
  };
  bind(plan.a, x);
  bind(plan.b, w);
  Tensor::Shape out_shape;
  for (char c : plan.out) {
    if (extent[c - 'a'] == 0) throw NumericError("einsum: output letter not bound in '" + std::string(spec) + "'");
    out_shape.push_back(extent[c - 'a']);
  }
  if (out_shape.empty()) out_shape.push_back(1);
  Tensor y(out_shape, 0.0);
  einsum_accumulate(plan.a, x, plan.b, w, plan.out, y, extent);
  return a.tape().record("einsum", std::move(y), {a, b},
                         [plan, extent](const Tensor&, const Tensor& g, std::span<const Tensor* const> in,
                                        std::span<Tensor* const> gin) {
                           // d/da: contract the output cotangent with b back onto a's letters.
                           if (gin[0]) einsum_accumulate(plan.out, g, plan.b, *in[1], plan.a, *gin[0], extent);
                           if (gin[1]) einsum_accumulate(plan.out, g, plan.a, *in[0], plan.b, *gin[1], extent);
                         });
}

Var transpose(Var a) {
  const Tensor& x = a.value();
  if (x.rank() != 2) throw NumericError("transpose: expected a matrix, got " + x.shape_string());
  const std::size_t r = x.extent(0), c = x.extent(1);
  Tensor y({c, r});
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) y[j * r + i] = x[i * c + j];
  }
  return a.tape().record("transpose", std::move(y), {a},
                         [r, c](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                                std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           for (std::size_t i = 0; i < r; ++i) {
                             for (std::size_t j = 0; j < c; ++j) (*gin[0])[i * c + j] += g[j * r + i];
                           }
                         });
}

Var reshape(Var a, Tensor::Shape shape) {
  Tensor y = a.value().reshaped(std::move(shape));
  return a.tape().record("reshape", std::move(y), {a},
                         [](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                            std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           for (std::size_t i = 0; i < g.size(); ++i) (*gin[0])[i] += g[i];
                         });
}

Var concat(Var a, Var b) {
  const Tensor& x = a.value();
  const Tensor& w = b.value();
  if (x.rank() != 1 || w.rank() != 1) {
    throw NumericError("concat: expected vectors, got " + x.shape_string() + " and " + w.shape_string());
  }
  std::vector<double> data(x.storage());
  data.insert(data.end(), w.storage().begin(), w.storage().end());
  const std::size_t na = x.size();
  return a.tape().record("concat", Tensor::vector(std::move(data)), {a, b},
                         [na](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                              std::span<Tensor* const> gin) {
                           if (gin[0]) {
                             for (std::size_t i = 0; i < na; ++i) (*gin[0])[i] += g[i];
                           }
                           if (gin[1]) {
                             for (std::size_t i = na; i < g.size(); ++i) (*gin[1])[i - na] += g[i];
                           }
                         });
}

Var relu(Var a) {
  return unary("relu", a, [](double x) { return x > 0.0 ? x : 0.0; },
               [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Var sin(Var a) {
  return unary("sin", a, [](double x) { return std::sin(x); }, [](double x, double) { return std::cos(x); });
}

Var cos(Var a) {
  return unary("cos", a, [](double x) { return std::cos(x); }, [](double x, double) { return -std::sin(x); });
}

Var square(Var a) {
  return unary("square", a, [](double x) { return x * x; }, [](double x, double) { return 2.0 * x; });
}

Var exp(Var a) {
  return unary("exp", a, [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Var log(Var a) {
  return unary("log", a, [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

Var sum(Var a) {
  double s = 0.0;
  for (double v : a.value().data()) s += v;
  return a.tape().record("sum", Tensor::scalar(s), {a},
                         [](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                            std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           for (double& v : gin[0]->data()) v += g[0];
                         });
}

Var logsumexp(Var a) {
  const Tensor& x = a.value();
  const double mx = *std::max_element(x.data().begin(), x.data().end());
  double s = 0.0;
  for (double v : x.data()) s += std::exp(v - mx);
  return a.tape().record("logsumexp", Tensor::scalar(mx + std::log(s)), {a},
                         [](const Tensor& out, const Tensor& g, std::span<const Tensor* const> in,
                            std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           const Tensor& xv = *in[0];
                           for (std::size_t i = 0; i < xv.size(); ++i) (*gin[0])[i] += g[0] * std::exp(xv[i] - out[0]);
                         });
}

Var softmax(Var a) {
  const Tensor& x = a.value();
  const double mx = *std::max_element(x.data().begin(), x.data().end());
  Tensor y(x.shape());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = std::exp(x[i] - mx);
    s += y[i];
  }
  for (double& v : y.data()) v /= s;
  return a.tape().record("softmax", std::move(y), {a},
                         [](const Tensor& out, const Tensor& g, std::span<const Tensor* const>,
                            std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           double dot = 0.0;
                           for (std::size_t i = 0; i < out.size(); ++i) dot += g[i] * out[i];
                           for (std::size_t i = 0; i < out.size(); ++i) (*gin[0])[i] += out[i] * (g[i] - dot);
                         });
}

Var select_lower(Var a) {
  const Tensor& x = a.value();
  require_square("select_lower", x);
  const std::size_t d = x.extent(0);
  Tensor y(x.shape(), 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) y[i * d + j] = x[i * d + j];
  }
  return a.tape().record("select_lower", std::move(y), {a},
                         [d](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                             std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           for (std::size_t i = 0; i < d; ++i) {
                             for (std::size_t j = 0; j <= i; ++j) (*gin[0])[i * d + j] += g[i * d + j];
                           }
                         });
}

Var fold_lower(Var a) {
  const Tensor& x = a.value();
  require_square("fold_lower", x);
  const std::size_t d = x.extent(0);
  Tensor y(x.shape(), 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) y[i * d + j] = x[i * d + j] + x[j * d + i];
    y[i * d + i] = x[i * d + i];
  }
  return a.tape().record("fold_lower", std::move(y), {a},
                         [d](const Tensor&, const Tensor& g, std::span<const Tensor* const>,
                             std::span<Tensor* const> gin) {
                           if (!gin[0]) return;
                           Tensor& gx = *gin[0];
                           for (std::size_t i = 0; i < d; ++i) {
                             for (std::size_t j = 0; j < i; ++j) {
                               gx[i * d + j] += g[i * d + j];
                               gx[j * d + i] += g[i * d + j];
                             }
                             gx[i * d + i] += g[i * d + i];
                           }
                         });
}

Var kl_divergence(Var pred, const Tensor& target, double floor) {
  const Tensor& p = pred.value();
  require_same_shape("kl_divergence", p, target);
  if (!(floor > 0.0)) throw NumericError("kl_divergence: floor must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0) throw NumericError("kl_divergence: prediction has negative entries");
    if (p[i] > 0.0) s += p[i] * std::log(p[i] / std::max(target[i], floor));
  }
  return pred.tape().record("kl_divergence", Tensor::scalar(s), {pred},
                            [target, floor](const Tensor&, const Tensor& g, std::span<const Tensor* const> in,
                                            std::span<Tensor* const> gin) {
                              if (!gin[0]) return;
                              const Tensor& pv = *in[0];
                              for (std::size_t i = 0; i < pv.size(); ++i) {
                                if (pv[i] > 0.0) (*gin[0])[i] += g[0] * (std::log(pv[i] / std::max(target[i], floor)) + 1.0);
                              }
                            });
}

}  // namespace ad

GradientResult gradient(const std::function<Var(Tape&, std::span<const Var>)>& f,
                        const std::vector<Tensor>& at) {
  Tape tape;
  std::vector<Var> vars;
  vars.reserve(at.size());
  for (const Tensor& t : at) vars.push_back(tape.variable_ref(t));
  const Var out = f(tape, vars);
  GradientResult r;
  r.value = out.value().item();
  tape.backward(out);
  for (const Var& v : vars) r.grads.push_back(tape.grad(v));
  return r;
}

}  // namespace qcnet
