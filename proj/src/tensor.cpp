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

#include "bingnn/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace bingnn {

DenseTensor::DenseTensor(std::size_t rows, std::size_t cols, float fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

DenseTensor::DenseTensor(std::size_t rows, std::size_t cols, std::vector<float> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw std::invalid_argument("DenseTensor: value count " +
                                std::to_string(values_.size()) + " does not match shape " +
                                shape_string());
  }
}

DenseTensor DenseTensor::from_rows(
    std::initializer_list<std::initializer_list<float>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<float> values;
  values.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("DenseTensor: ragged rows");
    values.insert(values.end(), row.begin(), row.end());
  }
  return DenseTensor(r, c, std::move(values));
}

DenseTensor DenseTensor::identity(std::size_t n) {
  DenseTensor t(n, n);
  for (std::size_t i = 0; i < n; ++i) t(i, i) = 1.0f;
  return t;
}

DenseTensor DenseTensor::transposed() const {
  DenseTensor t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void DenseTensor::fill(float v) { std::fill(values_.begin(), values_.end(), v); }

void DenseTensor::accumulate(const DenseTensor& other) {
  if (!same_shape(other)) {
    throw std::invalid_argument("accumulate: shape " + shape_string() + " vs " +
                                other.shape_string());
  }
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
}

std::string DenseTensor::shape_string() const {
  return "[" + std::to_string(rows_) + "x" + std::to_string(cols_) + "]";
}

DenseTensor matmul_values(const DenseTensor& a, const DenseTensor& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions disagree " + a.shape_string() +
                                " * " + b.shape_string());
  }
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  DenseTensor out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    float* o = out.data() + i * n;
    const float* ai = a.data() + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const float av = ai[p];
      if (av == 0.0f) continue;
      const float* bp = b.data() + p * n;
      for (std::size_t j = 0; j < n; ++j) o[j] += av * bp[j];
    }
  }
  return out;
}

}  // namespace bingnn
