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

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bingnn/tensor.hpp"
#include "test_util.hpp"

using namespace bingnn;

TEST_CASE("identity times M is M") {
  std::mt19937_64 rng(1);
  const DenseTensor m = testing::random_tensor(4, 3, -2.0f, 2.0f, rng);
  CHECK(matmul_values(DenseTensor::identity(4), m) == m);
}

TEST_CASE("small hand product") {
  const auto a = DenseTensor::from_rows({{1, 2}, {3, 4}});
  const auto b = DenseTensor::from_rows({{1}, {1}});
  CHECK(matmul_values(a, b) == DenseTensor::from_rows({{3}, {7}}));
}

TEST_CASE("matmul rejects mismatched inner dimensions") {
  CHECK_THROWS_AS(matmul_values(DenseTensor(2, 3), DenseTensor(2, 3)), std::invalid_argument);
}

TEST_CASE("transpose and accumulate") {
  const auto a = DenseTensor::from_rows({{1, 2, 3}, {4, 5, 6}});
  const DenseTensor t = a.transposed();
  CHECK(t.rows() == 3);
  CHECK(t(2, 1) == 6.0f);
  DenseTensor acc(2, 3, 1.0f);
  acc.accumulate(a);
  CHECK(acc(1, 2) == 7.0f);
  CHECK_THROWS_AS(acc.accumulate(t), std::invalid_argument);
}

TEST_CASE("constructor validates the value count") {
  CHECK_THROWS_AS(DenseTensor(2, 2, std::vector<float>{1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(DenseTensor::from_rows({{1, 2}, {3}}), std::invalid_argument);
  CHECK(DenseTensor(2, 5).shape_string() == "[2x5]");
}
