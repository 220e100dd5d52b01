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

#include "bingnn/binarize.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace bingnn {

namespace {

std::size_t words_for(std::size_t cols) {
  return (cols + PackedBitMatrix::kWordBits - 1) / PackedBitMatrix::kWordBits;
}

std::uint64_t valid_mask(std::size_t cols_in_last_word) {
  return cols_in_last_word == 64 ? ~std::uint64_t{0}
                                 : ((std::uint64_t{1} << cols_in_last_word) - 1);
}

}  // namespace

PackedBitMatrix::PackedBitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      words_per_row_(words_for(cols)),
      words_(rows * words_for(cols), 0) {}

PackedBitMatrix PackedBitMatrix::from_words(std::size_t rows, std::size_t cols,
                                            std::vector<std::uint64_t> words) {
  PackedBitMatrix m(rows, cols);
  if (words.size() != m.words_.size()) {
    throw std::invalid_argument("PackedBitMatrix: expected " + std::to_string(m.words_.size()) +
                                " words, got " + std::to_string(words.size()));
  }
  if (cols % kWordBits != 0 && m.words_per_row_ > 0) {
    const std::uint64_t pad = ~valid_mask(cols % kWordBits);
    for (std::size_t r = 0; r < rows; ++r) {
      if (words[r * m.words_per_row_ + m.words_per_row_ - 1] & pad) {
        throw std::invalid_argument("PackedBitMatrix: padding bit set in row " +
                                    std::to_string(r));
      }
    }
  }
  m.words_ = std::move(words);
  return m;
}

void PackedBitMatrix::set(std::size_t r, std::size_t c, bool plus_one) {
  std::uint64_t& w = words_[r * words_per_row_ + c / kWordBits];
  const std::uint64_t bit = std::uint64_t{1} << (c % kWordBits);
  if (plus_one)
    w |= bit;
  else
    w &= ~bit;
}

DenseTensor sign_values(const DenseTensor& t) {
  DenseTensor out(t.rows(), t.cols());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = sign_value(t[i]);
  return out;
}

DenseTensor ste_backward(const DenseTensor& grad_out, const DenseTensor& latent) {
  if (!grad_out.same_shape(latent)) {
    throw std::invalid_argument("ste_backward: shape " + grad_out.shape_string() + " vs " +
                                latent.shape_string());
  }
  DenseTensor out(latent.rows(), latent.cols());
  for (std::size_t i = 0; i < latent.size(); ++i) {
    const float w = latent[i];
    out[i] = (w > -1.0f && w < 1.0f) ? grad_out[i] : 0.0f;
  }
  return out;
}

Var sign_binarize(Var latent) {
  Tape& t = *latent.tape();
  const auto il = latent.id();
  return t.record(sign_values(latent.value()), {latent}, [il](Tape& t, std::uint32_t self) {
    t.grad_buffer(il).accumulate(ste_backward(t.grad_buffer(self), t.value(il)));
  });
}

PackedBitMatrix pack(const DenseTensor& pm1) {
  PackedBitMatrix m(pm1.rows(), pm1.cols());
  for (std::size_t r = 0; r < pm1.rows(); ++r) {
    for (std::size_t c = 0; c < pm1.cols(); ++c) {
      const float v = pm1(r, c);
      if (v == 1.0f) {
        m.set(r, c, true);
      } else if (v != -1.0f) {
        throw std::invalid_argument("pack: entry (" + std::to_string(r) + ", " +
                                    std::to_string(c) + ") = " + std::to_string(v) +
                                    " is not +/-1");
      }
    }
  }
  return m;
}

DenseTensor unpack(const PackedBitMatrix& m) {
  DenseTensor out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m.get(r, c) ? 1.0f : -1.0f;
  return out;
}

Int32Matrix xnor_popcount_matmul(const PackedBitMatrix& a, const PackedBitMatrix& b) {
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("xnor_popcount_matmul: inner dimension " +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.cols()));
  }
  const std::size_t k = a.cols();
  const std::size_t nw = a.words_per_row();
  // Padding bits are zero in both operands, so XNOR reports them as matches.
  const int pad = static_cast<int>(a.padding_bits());
  const int kk = static_cast<int>(k);
  Int32Matrix out{a.rows(), b.rows(), std::vector<std::int32_t>(a.rows() * b.rows())};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::uint64_t* ai = a.row_words(i).data();
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const std::uint64_t* bj = b.row_words(j).data();
      int matches = 0;
      for (std::size_t w = 0; w < nw; ++w) matches += std::popcount(~(ai[w] ^ bj[w]));
      matches -= pad;
      out.values[i * b.rows() + j] = 2 * matches - kk;
    }
  }
  return out;
}

Var xnor_matmul(Var a_pm1, Var b_pm1) {
  Tape& t = *a_pm1.tape();
  const DenseTensor& av = a_pm1.value();
  const DenseTensor& bv = b_pm1.value();
  if (av.cols() != bv.rows()) {
    throw std::invalid_argument("xnor_matmul: inner dimensions disagree " + av.shape_string() +
                                " * " + bv.shape_string());
  }
  const Int32Matrix prod = xnor_popcount_matmul(pack(av), pack(bv.transposed()));
  DenseTensor out(prod.rows, prod.cols);
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    out[i] = static_cast<float>(prod.values[i]);
  const auto ia = a_pm1.id(), ib = b_pm1.id();
  return t.record(std::move(out), {a_pm1, b_pm1}, [ia, ib](Tape& t, std::uint32_t self) {
    const DenseTensor& g = t.grad_buffer(self);
    if (t.requires_grad(ia)) {
      t.grad_buffer(ia).accumulate(matmul_values(g, t.value(ib).transposed()));
    }
    if (t.requires_grad(ib)) {
      t.grad_buffer(ib).accumulate(matmul_values(t.value(ia).transposed(), g));
    }
  });
}

}  // namespace bingnn
