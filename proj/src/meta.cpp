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

#include "bingnn/meta.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bingnn/binarize.hpp"

namespace bingnn {

GumbelSampler::GumbelSampler(std::uint64_t seed, std::uint64_t stream, float tau) : tau_(1.0f) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  rng_.seed(seq);
  set_tau(tau);
}

void GumbelSampler::set_tau(float tau) {
  if (!(tau > 0.0f)) throw std::invalid_argument("Gumbel temperature must be > 0");
  tau_ = tau;
}

double GumbelSampler::uniform() {
  // 53 random mantissa bits, shifted half a step off zero.
  return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
}

double GumbelSampler::gumbel() { return -std::log(-std::log(uniform())); }

DenseTensor GumbelSampler::gumbel(std::size_t rows, std::size_t cols) {
  DenseTensor g(rows, cols);
  for (float& v : g.values()) v = static_cast<float>(gumbel());
  return g;
}

BetaMap::BetaMap(float lo, float hi) : beta_min(lo), beta_max(hi) {
  if (!(lo > 0.0f) || !(hi > lo)) {
    throw std::invalid_argument("BetaMap: need 0 < beta_min < beta_max, got " +
                                std::to_string(lo) + ", " + std::to_string(hi));
  }
}

float BetaMap::operator()(float raw) const {
  const float s = raw >= 0.0f ? 1.0f / (1.0f + std::exp(-raw))
                              : std::exp(raw) / (1.0f + std::exp(raw));
  return beta_min + (beta_max - beta_min) * s;
}

Var BetaMap::operator()(Var raw) const {
  Tape& t = *raw.tape();
  Var scaled = scalar_mul(sigmoid(raw), beta_max - beta_min);
  return add(scaled, t.constant(DenseTensor(1, 1, beta_min)));
}

std::vector<std::size_t> gna_argmax(const DenseTensor& logits, GumbelSampler* sampler) {
  std::vector<std::size_t> choice(logits.rows(), 0);
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    float best = 0.0f;
    for (std::size_t k = 0; k < logits.cols(); ++k) {
      float v = logits(i, k);
      if (sampler) v += static_cast<float>(sampler->gumbel());
      if (k == 0 || v > best) {
        best = v;
        choice[i] = k;
      }
    }
  }
  return choice;
}

Var gna_select(Var logits, GumbelSampler& sampler, Mode mode, bool eval_noise) {
  Tape& t = *logits.tape();
  const DenseTensor& lv = logits.value();
  if (mode == Mode::kTrain) {
    Var noisy = add(logits, t.constant(sampler.gumbel(lv.rows(), lv.cols())));
    return softmax(noisy, sampler.tau());
  }
  const auto choice = gna_argmax(lv, eval_noise ? &sampler : nullptr);
  DenseTensor onehot(lv.rows(), lv.cols());
  for (std::size_t i = 0; i < choice.size(); ++i) onehot(i, choice[i]) = 1.0f;
  return t.constant(std::move(onehot));
}

Var gna_aggregate(const Graph& g, Var feats, Var weights, std::span<const AggregatorKind> pool) {
  const DenseTensor& w = weights.value();
  if (w.cols() != pool.size() || w.rows() != g.num_nodes()) {
    throw std::invalid_argument("gna_aggregate: weights " + w.shape_string() + " for " +
                                std::to_string(g.num_nodes()) + " nodes and pool of " +
                                std::to_string(pool.size()));
  }
  for (std::size_t i = 0; i < w.rows(); ++i) {
    double s = 0.0;
    for (float v : w.row(i)) s += v;
    if (std::abs(s - 1.0) > 1e-4) {
      throw std::invalid_argument("gna_aggregate: weight row " + std::to_string(i) + " sums to " +
                                  std::to_string(s));
    }
  }
  Var acc;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    Var term = mul_elem(aggregate(pool[k], g, feats), slice_cols(weights, k, k + 1));
    acc = k == 0 ? term : add(acc, term);
  }
  return acc;
}

Var ana_aggregate(const Graph& g, Var feats, Var beta) {
  Tape& t = *feats.tape();
  const DenseTensor& x = feats.value();
  const DenseTensor& b = beta.value();
  if (x.rows() != g.num_nodes() || b.rows() != g.num_nodes() || b.cols() != 1) {
    throw std::invalid_argument("ana_aggregate: feats " + x.shape_string() + ", beta " +
                                b.shape_string() + " for " + std::to_string(g.num_nodes()) +
                                " nodes");
  }
  const std::size_t n = x.rows(), d = x.cols();
  DenseTensor out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double bi = b(i, 0);
    if (!(bi > 0.0)) throw std::invalid_argument("ana_aggregate: beta must be > 0");
    const auto nbrs = g.in_neighbors(i);
    const double log_deg = std::log(static_cast<double>(nbrs.size()));
    for (std::size_t c = 0; c < d; ++c) {
      double m = -INFINITY;
      for (std::size_t j : nbrs) m = std::max(m, bi * x(j, c));
      double s = 0.0;
      for (std::size_t j : nbrs) s += std::exp(bi * x(j, c) - m);
      out(i, c) = static_cast<float>((m + std::log(s) - log_deg) / bi);
    }
  }
  const auto ix = feats.id(), ib = beta.id();
  return t.record(std::move(out), {feats, beta}, [ix, ib, &g](Tape& t, std::uint32_t self) {
    const DenseTensor& gout = t.grad_buffer(self);
    const DenseTensor& out = t.value(self);
    const DenseTensor& x = t.value(ix);
    const DenseTensor& b = t.value(ib);
    const bool want_x = t.requires_grad(ix), want_b = t.requires_grad(ib);
    DenseTensor* gx = want_x ? &t.grad_buffer(ix) : nullptr;
    DenseTensor* gb = want_b ? &t.grad_buffer(ib) : nullptr;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const double bi = b(i, 0);
      const auto nbrs = g.in_neighbors(i);
      double gbeta = 0.0;
      for (std::size_t c = 0; c < x.cols(); ++c) {
        const double go = gout(i, c);
        if (go == 0.0) continue;
        double m = -INFINITY;
        for (std::size_t j : nbrs) m = std::max(m, bi * x(j, c));
        double s = 0.0;
        for (std::size_t j : nbrs) s += std::exp(bi * x(j, c) - m);
        // d out / d x_j = p_j; d out / d beta = (sum_j p_j x_j - out) / beta.
        double px = 0.0;
        for (std::size_t j : nbrs) {
          const double p = std::exp(bi * x(j, c) - m) / s;
          px += p * x(j, c);
          if (gx) (*gx)(j, c) += static_cast<float>(go * p);
        }
        gbeta += go * (px - out(i, c)) / bi;
      }
      if (gb) (*gb)(i, 0) += static_cast<float>(gbeta);
    }
  });
}

Var ana_min_aggregate(const Graph& g, Var feats, Var beta) {
  return scalar_mul(ana_aggregate(g, scalar_mul(feats, -1.0f), beta), -1.0f);
}

Var ana_var_aggregate(const Graph& g, Var feats, Var beta) {
  Var second = ana_aggregate(g, mul_elem(feats, feats), beta);
  Var first = ana_aggregate(g, feats, beta);
  return sub(second, mul_elem(first, first));
}

Var ana_hybrid_aggregate(const Graph& g, Var feats, Var raw, int h, const BetaMap& beta_map) {
  if (h < 1 || h > 3) {
    throw std::invalid_argument("ana_hybrid_aggregate: h must be 1, 2 or 3, got " +
                                std::to_string(h));
  }
  if (raw.cols() != ana_raw_width(h) || raw.rows() != g.num_nodes()) {
    throw std::invalid_argument("ana_hybrid_aggregate: raw " + raw.value().shape_string() +
                                ", expected width " + std::to_string(ana_raw_width(h)));
  }
  if (h == 1) return ana_aggregate(g, feats, beta_map(raw));
  Var omega = softmax(slice_cols(raw, h, 2 * h), 1.0f);
  Var acc;
  for (int k = 0; k < h; ++k) {
    Var beta = beta_map(slice_cols(raw, k, k + 1));
    Var term = k == 0   ? ana_aggregate(g, feats, beta)
               : k == 1 ? ana_min_aggregate(g, feats, beta)
                        : ana_var_aggregate(g, feats, beta);
    term = mul_elem(term, slice_cols(omega, k, k + 1));
    acc = k == 0 ? term : add(acc, term);
  }
  return acc;
}

BinaryGraphAutoEncoder::BinaryGraphAutoEncoder(std::size_t in_dim, std::size_t out_dim, bool bias,
                                               std::mt19937_64& rng)
    : has_bias_(bias) {
  const float bound = 1.0f / std::sqrt(static_cast<float>(in_dim));
  std::uniform_real_distribution<float> u(-bound, bound);
  DenseTensor w(in_dim, out_dim);
  for (float& v : w.values()) v = u(rng);
  weight_ = Parameter(std::move(w));
  if (bias) bias_ = Parameter(DenseTensor(1, out_dim));
}

Var BinaryGraphAutoEncoder::forward(Tape& tape, const Graph& g, Var feats) {
  Var ctx = sign_binarize(aggregate(AggregatorKind::kMean, g, feats));
  Var wb = sign_binarize(tape.parameter(weight_));
  Var out = scalar_mul(xnor_matmul(ctx, wb), 1.0f / std::sqrt(static_cast<float>(in_dim())));
  if (has_bias_) out = add(out, tape.parameter(bias_));
  return out;
}

}  // namespace bingnn
