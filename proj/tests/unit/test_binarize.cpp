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

#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <vector>

#include "bingnn/binarize.hpp"
#include "test_util.hpp"

using namespace bingnn;
using testing::random_pm1;
using testing::random_tensor;

TEST_CASE("sign with sign(0) = +1") {
  const DenseTensor s = sign_values(DenseTensor::from_rows({{0.7f, -0.2f, 0.0f}}));
  CHECK(s == DenseTensor::from_rows({{1, -1, 1}}));
  CHECK(sign_values(DenseTensor(1, 5)) == DenseTensor(1, 5, 1.0f));
  CHECK(sign_value(-0.0f) == 1.0f);
}

TEST_CASE("sign agrees with a scalar loop") {
  std::mt19937_64 rng(1);
  const DenseTensor x = random_tensor(1, 100, -3.0f, 3.0f, rng);
  const DenseTensor s = sign_values(x);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(s[i] == (x[i] < 0.0f ? -1.0f : 1.0f));
}

TEST_CASE("straight-through gradient on the open interval") {
  auto ste = [](float latent, float g) {
    return ste_backward(DenseTensor(1, 1, g), DenseTensor(1, 1, latent))[0];
  };
  CHECK(ste(0.5f, 2.0f) == 2.0f);
  CHECK(ste(1.5f, 2.0f) == 0.0f);
  CHECK(ste(-1.0f, 2.0f) == 0.0f);
  CHECK(ste(1.0f, 2.0f) == 0.0f);
  CHECK(ste(-0.999f, 3.0f) == 3.0f);
  CHECK_THROWS_AS(ste_backward(DenseTensor(1, 2), DenseTensor(2, 1)), std::invalid_argument);
}

TEST_CASE("sign_binarize tape op uses the straight-through rule") {
  Tape t;
  Var x = t.variable(DenseTensor::from_rows({{0.3f, -2.0f, -0.4f, 1.0f}}));
  Var y = sign_binarize(x);
  CHECK(y.value() == DenseTensor::from_rows({{1, -1, -1, 1}}));
  t.backward(sum_all(mul_elem(y, t.constant(DenseTensor::from_rows({{1, 2, 3, 4}})))));
  CHECK(t.gradient(x) == DenseTensor::from_rows({{1, 0, 3, 0}}));
}

TEST_CASE("pack layouts") {
  const PackedBitMatrix full = pack(DenseTensor(1, 64, 1.0f));
  REQUIRE(full.words().size() == 1);
  CHECK(full.words()[0] == ~std::uint64_t{0});
  CHECK(full.padding_bits() == 0);

  const PackedBitMatrix three = pack(DenseTensor::from_rows({{1, -1, 1}}));
  CHECK(three.words()[0] == 0b101u);
  CHECK(three.cols() == 3);
  CHECK(three.padding_bits() == 61);

  CHECK_THROWS_AS(pack(DenseTensor::from_rows({{1, 0.5f}})), std::invalid_argument);
}

TEST_CASE("pack then unpack round-trips") {
  std::mt19937_64 rng(2);
  const DenseTensor m = random_pm1(7, 130, rng);
  const PackedBitMatrix p = pack(m);
  CHECK(p.words_per_row() == 3);
  CHECK(unpack(p) == m);
}

TEST_CASE("from_words rejects a wrong count or set padding") {
  CHECK_NOTHROW(PackedBitMatrix::from_words(1, 3, {0b111u}));
  CHECK_THROWS_AS(PackedBitMatrix::from_words(1, 3, {0b1000u}), std::invalid_argument);
  CHECK_THROWS_AS(PackedBitMatrix::from_words(2, 3, {0u}), std::invalid_argument);
}

TEST_CASE("xnor popcount small cases") {
  const PackedBitMatrix a = pack(DenseTensor(1, 64, 1.0f));
  CHECK(xnor_popcount_matmul(a, a)(0, 0) == 64);
  const PackedBitMatrix x = pack(DenseTensor::from_rows({{1, -1, 1, -1}}));
  const PackedBitMatrix y = pack(DenseTensor::from_rows({{1, 1, -1, -1}}));
  CHECK(xnor_popcount_matmul(x, y)(0, 0) == 0);
  CHECK_THROWS_AS(xnor_popcount_matmul(x, pack(DenseTensor(1, 5, 1.0f))), std::invalid_argument);
}

TEST_CASE("kernel equals float matmul on 16x200 by 12x200") {
  std::mt19937_64 rng(3);
  const DenseTensor a = random_pm1(16, 200, rng);
  const DenseTensor b = random_pm1(12, 200, rng);
  const Int32Matrix k = xnor_popcount_matmul(pack(a), pack(b));
  const DenseTensor ref = matmul_values(a, b.transposed());
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 12; ++j) CHECK(static_cast<float>(k(i, j)) == ref(i, j));
  }
}

TEST_CASE("kernel exactness, range and parity over random shapes") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> dim(1, 130);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = dim(rng), k = dim(rng), n = dim(rng);
    const DenseTensor a = random_pm1(m, k, rng);
    const DenseTensor b = random_pm1(n, k, rng);
    const Int32Matrix out = xnor_popcount_matmul(pack(a), pack(b));
    const DenseTensor ref = matmul_values(a, b.transposed());
    bool exact = true, in_range = true, parity = true;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::int32_t v = out(i, j);
        exact &= static_cast<float>(v) == ref(i, j);
        in_range &= std::abs(v) <= static_cast<std::int32_t>(k);
        parity &= (static_cast<std::int32_t>(k) - v) % 2 == 0;
      }
    }
    INFO("m=" << m << " k=" << k << " n=" << n);
    CHECK(exact);
    CHECK(in_range);
    CHECK(parity);
  }
}

TEST_CASE("xnor_matmul tape op forward and dense backward") {
  std::mt19937_64 rng(5);
  const DenseTensor a = random_pm1(3, 70, rng);
  const DenseTensor b = random_pm1(70, 4, rng);
  Tape t;
  Var av = t.variable(a), bv = t.variable(b);
  Var y = xnor_matmul(av, bv);
  CHECK(y.value() == matmul_values(a, b));
  const DenseTensor c = random_tensor(3, 4, -1.0f, 1.0f, rng);
  t.backward(sum_all(mul_elem(y, t.constant(c))));
  CHECK(testing::max_abs_diff(t.gradient(av), matmul_values(c, b.transposed())) < 1e-5);
  CHECK(testing::max_abs_diff(t.gradient(bv), matmul_values(a.transposed(), c)) < 1e-5);
  CHECK_THROWS_AS(xnor_matmul(av, t.variable(random_pm1(3, 4, rng))), std::invalid_argument);
}
