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

// Learnable aggregators: Gumbel selection over the pool (GNA) and the
// log-mean-exp family with a learned inverse temperature (ANA).

#ifndef BINGNN_META_HPP_
#define BINGNN_META_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "bingnn/aggregators.hpp"
#include "bingnn/autodiff.hpp"
#include "bingnn/graph.hpp"

namespace bingnn {

enum class Mode { kTrain, kEval };

/// Gumbel(0, 1) source with a softmax temperature.
class GumbelSampler {
 public:
  /// Throws std::invalid_argument if tau <= 0.
  GumbelSampler(std::uint64_t seed, std::uint64_t stream, float tau = 1.0f);

  float tau() const { return tau_; }
  void set_tau(float tau);

  /// U uniform on the open interval (0, 1).
  double uniform();
  /// -log(-log(U)).
  double gumbel();
  DenseTensor gumbel(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 rng_;
  float tau_;
};

/// beta = beta_min + (beta_max - beta_min) * sigmoid(raw).
struct BetaMap {
  /// Throws std::invalid_argument unless 0 < beta_min < beta_max.
  BetaMap(float beta_min = 0.1f, float beta_max = 10.0f);

  float operator()(float raw) const;
  Var operator()(Var raw) const;

  float beta_min;
  float beta_max;
};

/// Row-wise selection weights over the pool. Train mode: softmax((logits +
/// G) / tau). Eval mode: one-hot of argmax(logits), plus noise only when
/// `eval_noise` is set; ties go to the lowest index. The eval result carries no
/// gradient.
Var gna_select(Var logits, GumbelSampler& sampler, Mode mode, bool eval_noise = false);

/// Per-row argmax of logits (+ Gumbel noise when `sampler` is given), lowest
/// index on ties.
std::vector<std::size_t> gna_argmax(const DenseTensor& logits, GumbelSampler* sampler);

/// Row i = sum_k weights(i, k) * aggregate(pool[k])(i). Throws
/// std::invalid_argument if a weight row does not sum to 1 within 1e-4.
Var gna_aggregate(const Graph& g, Var feats, Var weights, std::span<const AggregatorKind> pool);

/// (M + log sum_j exp(beta x_j - M) - log deg) / beta per channel, with
/// M = max_j beta x_j. `beta` is [N x 1] and strictly positive.
Var ana_aggregate(const Graph& g, Var feats, Var beta);
/// -ana_aggregate(g, -feats, beta).
Var ana_min_aggregate(const Graph& g, Var feats, Var beta);
/// ana_aggregate(feats^2) - ana_aggregate(feats)^2.
Var ana_var_aggregate(const Graph& g, Var feats, Var beta);

/// Weighted sum of the first h terms of (ana, ana_min, ana_var). `raw` is
/// [N x 1] for h = 1 (a single beta channel) and [N x 2h] otherwise: columns
/// [0, h) feed BetaMap per term, columns [h, 2h) are softmaxed into the term
/// weights. Throws std::invalid_argument for h outside {1, 2, 3} or a wrong
/// raw width.
Var ana_hybrid_aggregate(const Graph& g, Var feats, Var raw, int h, const BetaMap& beta_map);

/// Width of the raw encoder output the hybrid expects.
inline std::size_t ana_raw_width(int h) { return h == 1 ? 1 : 2 * static_cast<std::size_t>(h); }

/// Per-layer 1-bit encoder producing the meta-aggregator controls:
/// sign(mean of the closed neighborhood) times sign(W), scaled by
/// 1/sqrt(in_dim), plus an optional full-precision bias.
class BinaryGraphAutoEncoder {
 public:
  BinaryGraphAutoEncoder() = default;
  BinaryGraphAutoEncoder(std::size_t in_dim, std::size_t out_dim, bool bias, std::mt19937_64& rng);

  std::size_t in_dim() const { return weight_.value.rows(); }
  std::size_t out_dim() const { return weight_.value.cols(); }
  bool has_bias() const { return has_bias_; }

  Var forward(Tape& tape, const Graph& g, Var feats);

  Parameter& weight() { return weight_; }
  const Parameter& weight() const { return weight_; }
  Parameter& bias() { return bias_; }
  const Parameter& bias() const { return bias_; }

 private:
  Parameter weight_;
  Parameter bias_;
  bool has_bias_ = false;
};

}  // namespace bingnn

#endif  // BINGNN_META_HPP_
