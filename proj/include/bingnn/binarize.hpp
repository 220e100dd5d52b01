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

#ifndef BINGNN_BINARIZE_HPP_
#define BINGNN_BINARIZE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bingnn/autodiff.hpp"
#include "bingnn/tensor.hpp"

namespace bingnn {

/// Row-major +/-1 matrix, 64 columns per word. Bit b of word w in a row holds
/// column 64*w + b; a set bit is +1, a clear bit is -1. Padding bits past
/// `cols` in the last word of each row are always zero.
class PackedBitMatrix {
 public:
  static constexpr std::size_t kWordBits = 64;

  PackedBitMatrix() = default;
  PackedBitMatrix(std::size_t rows, std::size_t cols);
  /// Adopts raw words (checkpoint load). Throws if the count is wrong or a
  /// padding bit is set.
  static PackedBitMatrix from_words(std::size_t rows, std::size_t cols,
                                    std::vector<std::uint64_t> words);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_per_row_; }
  std::size_t padding_bits() const { return words_per_row_ * kWordBits - cols_; }

  std::span<const std::uint64_t> row_words(std::size_t r) const {
    return {words_.data() + r * words_per_row_, words_per_row_};
  }
  std::span<const std::uint64_t> words() const { return words_; }

  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool plus_one);

  friend bool operator==(const PackedBitMatrix&, const PackedBitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Integer result of the XNOR/popcount kernel.
struct Int32Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int32_t> values;

  std::int32_t operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

/// sign(x) with sign(0) = +1.
inline float sign_value(float x) { return x >= 0.0f ? 1.0f : -1.0f; }
DenseTensor sign_values(const DenseTensor& t);

/// Straight-through gradient: passes `grad_out` where latent is strictly
/// inside (-1, 1), zero elsewhere.
DenseTensor ste_backward(const DenseTensor& grad_out, const DenseTensor& latent);

/// Tape op: forward sign(), backward ste_backward().
Var sign_binarize(Var latent);

/// Throws std::invalid_argument on any entry other than -1 or +1.
PackedBitMatrix pack(const DenseTensor& pm1);
DenseTensor unpack(const PackedBitMatrix& m);

/// out(i, j) = sum_c a(i, c) * b(j, c), with `b` already transposed so both
/// operands run along the reduction axis.
Int32Matrix xnor_popcount_matmul(const PackedBitMatrix& a, const PackedBitMatrix& b);

/// Tape op over +/-1 operands a [m x k] and b [k x n]. The forward product runs
/// on the packed kernel; the backward pass is the dense matmul rule.
Var xnor_matmul(Var a_pm1, Var b_pm1);

}  // namespace bingnn

#endif  // BINGNN_BINARIZE_HPP_
