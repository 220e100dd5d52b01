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

#ifndef BINGNN_TENSOR_HPP_
#define BINGNN_TENSOR_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace bingnn {

/// Row-major 2-D float32 array.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(std::size_t rows, std::size_t cols, float fill = 0.0f);
  DenseTensor(std::size_t rows, std::size_t cols, std::vector<float> values);

  static DenseTensor from_rows(
      std::initializer_list<std::initializer_list<float>> rows);
  static DenseTensor identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool same_shape(const DenseTensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  float& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  float operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  float& operator[](std::size_t i) { return values_[i]; }
  float operator[](std::size_t i) const { return values_[i]; }

  std::span<float> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const float> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<float> values() { return values_; }
  std::span<const float> values() const { return values_; }
  float* data() { return values_.data(); }
  const float* data() const { return values_.data(); }

  DenseTensor transposed() const;
  void fill(float v);

  /// Elementwise `*this += other`; shapes must match.
  void accumulate(const DenseTensor& other);

  std::string shape_string() const;

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.values_ == b.values_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> values_;
};

/// Dense product `a * b` without tape participation.
DenseTensor matmul_values(const DenseTensor& a, const DenseTensor& b);

}  // namespace bingnn

#endif  // BINGNN_TENSOR_HPP_
