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

#include <deque>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcnet/tensor.hpp"

namespace qcnet {

class Tape;

/// Handle to a node recorded on a Tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  const Tensor& value() const;
  const Tensor::Shape& shape() const { return value().shape(); }
  std::size_t id() const { return id_; }
  Tape& tape() const { return *tape_; }

 private:
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Adds the contribution of an output cotangent to the input cotangents.
/// in_grads[k] is null when input k does not need a gradient.
using Pullback = std::function<void(const Tensor& out_value, const Tensor& out_grad,
                                    std::span<const Tensor* const> in_values,
                                    std::span<Tensor* const> in_grads)>;

/// Reverse-mode record of one forward evaluation. Single owner; distinct
/// tapes may be used from distinct threads.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Leaf that receives a gradient.
  Var variable(Tensor value);
  /// Leaf that receives a gradient and borrows `value`, which must outlive the tape.
  Var variable_ref(const Tensor& value);
  /// Leaf without a gradient.
  Var constant(Tensor value);
  Var constant_ref(const Tensor& value);

  /// Records a primitive. Throws NumericError naming `op` if the forward
  /// value is not finite.
  Var record(std::string_view op, Tensor value, std::initializer_list<Var> inputs, Pullback pullback);

  /// Seeds the scalar `output` with 1 and propagates cotangents.
  void backward(Var output);
  /// Propagates an explicit output cotangent.
  void backward(Var output, const Tensor& seed);

  /// Cotangent accumulated on `v`; zeros if nothing reached it.
  Tensor grad(Var v) const;

  const Tensor& value(std::size_t id) const { return *nodes_[id].value; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor owned;
    const Tensor* value = nullptr;
    Tensor grad;
    std::vector<std::size_t> inputs;
    Pullback pullback;
    std::string_view op;
    bool needs_grad = false;
    bool has_grad = false;
  };

  Var push(Node node, bool owned);
  Tensor& grad_slot(Node& node);

  std::deque<Node> nodes_;
};

inline const Tensor& Var::value() const { return tape_->value(id_); }

namespace ad {

Var add(Var a, Var b);
Var sub(Var a, Var b);
/// Elementwise product of equal shapes.
Var mul(Var a, Var b);
Var scale(Var a, double s);
/// (m x k)(k x n) or (m x k)(k).
Var matmul(Var a, Var b);
/// Two-operand Einstein summation, e.g. "sia,s->ia" or "jia,ja->ia".
/// Letters absent from the output are summed; repeated letters inside one
/// operand are not supported.
Var einsum(std::string_view spec, Var a, Var b);
/// 2-D transpose.
Var transpose(Var a);
Var reshape(Var a, Tensor::Shape shape);
/// Concatenation of 1-D tensors.
Var concat(Var a, Var b);
/// max(0, x); subgradient 0 at 0.
Var relu(Var a);
Var sin(Var a);
Var cos(Var a);
Var square(Var a);
Var exp(Var a);
Var log(Var a);
/// Sum of all entries, shape (1).
Var sum(Var a);
/// log(sum(exp(a))) over all entries with max-subtraction, shape (1).
Var logsumexp(Var a);
/// exp(a - logsumexp(a)) over all entries.
Var softmax(Var a);
/// Zeroes the strict upper triangle of a square matrix.
Var select_lower(Var a);
/// Lower-triangular fold: out(i,j) = a(i,j) + a(j,i) for i > j, a(i,i) on
/// the diagonal, zero above.
Var fold_lower(Var a);
/// sum over cells with pred > 0 of pred * log(pred / max(target, floor)).
Var kl_divergence(Var pred, const Tensor& target, double floor);

}  // namespace ad

/// Value and reverse-mode gradient of a scalar taped function at `at`.
struct GradientResult {
  double value = 0.0;
  std::vector<Tensor> grads;
};
GradientResult gradient(const std::function<Var(Tape&, std::span<const Var>)>& f,
                        const std::vector<Tensor>& at);

}  // namespace qcnet
