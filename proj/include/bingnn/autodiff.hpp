// Copyright 2026 The bingnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Define-by-run reverse-mode differentiation over DenseTensor values.
//
// A Tape owns every intermediate value of one forward pass. Operations are
// free functions taking Var handles; each records its output together with a
// closure that pushes the output gradient back to its inputs. Tapes are
// single-threaded and rebuilt for every forward pass.

#ifndef BINGNN_AUTODIFF_HPP_
#define BINGNN_AUTODIFF_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "bingnn/tensor.hpp"

namespace bingnn {

/// A trainable tensor that outlives tapes. `grad` accumulates across
/// Tape::backward calls until zero_grad().
struct Parameter {
  Parameter() = default;
  explicit Parameter(DenseTensor v) : value(std::move(v)), grad(value.rows(), value.cols()) {}
  void zero_grad() { grad = DenseTensor(value.rows(), value.cols()); }

  DenseTensor value;
  DenseTensor grad;
};

class Tape;

class Var {
 public:
  Var() = default;

  Tape* tape() const { return tape_; }
  std::uint32_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

  const DenseTensor& value() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  bool requires_grad() const;

 private:
  friend class Tape;
  Var(Tape* tape, std::uint32_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::uint32_t id_ = 0;
};

class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::uint32_t self)>;

  /// With `record == false` no backward closures are stored (inference).
  explicit Tape(bool record = true) : record_(record) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const { return record_; }

  Var constant(DenseTensor value);
  /// Leaf bound to `p`; backward() adds the leaf gradient into `p.grad`.
  Var parameter(Parameter& p);
  /// Leaf whose gradient is kept on the tape (tests, finite differences).
  Var variable(DenseTensor value);

  /// Records an operation output. `fn` runs during backward only when at
  /// least one input requires a gradient.
  Var record(DenseTensor value, std::span<const Var> inputs, BackwardFn fn);
  Var record(DenseTensor value, std::initializer_list<Var> inputs, BackwardFn fn) {
    return record(std::move(value), std::span<const Var>(inputs.begin(), inputs.size()),
                  std::move(fn));
  }

  const DenseTensor& value(std::uint32_t id) const { return nodes_[id].value; }
  bool requires_grad(std::uint32_t id) const { return nodes_[id].requires_grad; }
  /// Gradient buffer for `id`, allocated as zeros on first use.
  DenseTensor& grad_buffer(std::uint32_t id);
  /// Gradient of `v` after backward(); zeros if nothing reached it.
  DenseTensor gradient(Var v) const;

  /// Reverse sweep from a 1x1 loss.
  void backward(Var loss);

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    DenseTensor value;
    DenseTensor grad;
    BackwardFn backward;
    Parameter* param = nullptr;
    bool requires_grad = false;
  };

  Var push(Node node);

  // deque: value() references stay valid while the tape grows.
  std::deque<Node> nodes_;
  bool record_;
};

Var matmul(Var a, Var b);
/// a + b; `b` may also be a 1xC row or Rx1 column broadcast over `a`.
Var add(Var a, Var b);
Var sub(Var a, Var b);
/// Elementwise product with the same broadcasting rules as add().
Var mul_elem(Var a, Var b);
Var scalar_mul(Var a, float s);
Var relu(Var a);
Var exp(Var a);
/// Throws std::domain_error on non-positive input.
Var log(Var a);
Var sigmoid(Var a);
/// Row-wise softmax(a / temperature), max-subtracted.
Var softmax(Var a, float temperature);

// Reductions across rows: [R x C] -> [1 x C].
Var sum_rows(Var a);
Var mean_rows(Var a);
/// Gradient routes to the first (lowest-row) maximum of every column.
Var max_rows(Var a);
/// Sum of every entry: [R x C] -> [1 x 1].
Var sum_all(Var a);

Var slice_cols(Var a, std::size_t begin, std::size_t end);
Var concat_cols(std::span<const Var> parts);
Var gather_rows(Var a, std::span<const std::size_t> rows);
/// Mean over contiguous row segments: row r belongs to segment[r].
Var segment_mean(Var a, std::span<const std::size_t> segment, std::size_t num_segments);

}  // namespace bingnn

#endif  // BINGNN_AUTODIFF_HPP_
