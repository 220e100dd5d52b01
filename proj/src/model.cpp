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

#include "bingnn/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bingnn/aggregators.hpp"
#include "bingnn/binarize.hpp"

namespace bingnn {

namespace {

constexpr std::uint64_t kInitStream = 1;

std::size_t packed_bits(std::size_t rows_along_reduction, std::size_t outputs) {
  const std::size_t words = (rows_along_reduction + 63) / 64;
  return outputs * words * 64;
}

DenseTensor uniform_init(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  const float bound = 1.0f / std::sqrt(static_cast<float>(rows));
  std::uniform_real_distribution<float> u(-bound, bound);
  DenseTensor w(rows, cols);
  for (float& v : w.values()) v = u(rng);
  return w;
}

}  // namespace

std::size_t LayerSpec::weight_rows(std::size_t pool_size) const {
  const bool concat = agg.kind == AggMode::Kind::kMixedConcat;
  return concat && order == Order::kAggregateFirst ? in_dim * pool_size : in_dim;
}

std::size_t LayerSpec::output_dim(std::size_t pool_size) const {
  const bool concat = agg.kind == AggMode::Kind::kMixedConcat;
  return concat && order == Order::kTransformFirst ? out_dim * pool_size : out_dim;
}

std::size_t LayerSpec::aggregated_dim() const {
  return order == Order::kTransformFirst ? out_dim : in_dim;
}

std::size_t encoder_width(const AggMode& mode, std::size_t pool_size) {
  switch (mode.kind) {
    case AggMode::Kind::kGna:
      return pool_size;
    case AggMode::Kind::kAna:
      return 1;
    case AggMode::Kind::kAnaHybrid:
      return ana_raw_width(mode.hybrid_terms);
    default:
      return 0;
  }
}

std::vector<LayerSpec> plan_layers(const ModelConfig& c) {
  if (c.in_dim <= 0 || c.out_dim <= 0) {
    throw std::invalid_argument("plan_layers: in_dim and out_dim must be resolved");
  }
  if (c.layers < 1) throw std::invalid_argument("plan_layers: need at least one layer");
  const std::size_t pool = c.pool.size();
  std::vector<LayerSpec> specs(static_cast<std::size_t>(c.layers));
  std::size_t width = static_cast<std::size_t>(c.in_dim);
  for (std::size_t l = 0; l < specs.size(); ++l) {
    LayerSpec& s = specs[l];
    const bool last = l + 1 == specs.size();
    s.in_dim = width;
    s.out_dim = static_cast<std::size_t>(last ? c.effective_readout_dim() : c.hidden_dim);
    s.order = c.order;
    s.agg = c.agg_mode;
    s.precision = (c.binary && l > 0 && !last) ? Precision::kBinary : Precision::kFull;
    width = s.output_dim(pool);
  }
  for (std::size_t l = 0; l < specs.size(); ++l) {
    specs[l].relu = !(l + 1 < specs.size() && specs[l + 1].precision == Precision::kBinary);
  }
  return specs;
}

BinGnnModel::BinGnnModel(const ModelConfig& config)
    : config_(config), beta_map_(config.beta_min, config.beta_max) {
  const auto specs = plan_layers(config_);
  std::seed_seq seq{static_cast<std::uint32_t>(config_.seed),
                    static_cast<std::uint32_t>(config_.seed >> 32),
                    static_cast<std::uint32_t>(kInitStream), 0u};
  std::mt19937_64 rng(seq);
  const std::size_t pool = config_.pool.size();
  for (const LayerSpec& s : specs) {
    Layer layer;
    layer.spec = s;
    layer.weight = Parameter(uniform_init(s.weight_rows(pool), s.out_dim, rng));
    layer.has_bias = config_.bias;
    if (config_.bias) layer.bias = Parameter(DenseTensor(1, s.output_dim(pool)));
    if (const std::size_t ew = encoder_width(s.agg, pool); ew > 0) {
      layer.encoder.emplace(s.aggregated_dim(), ew, false, rng);
    }
    layers_.push_back(std::move(layer));
  }
  const std::size_t readout = specs.back().output_dim(pool);
  head_weight_ = Parameter(uniform_init(readout, static_cast<std::size_t>(config_.out_dim), rng));
  head_bias_ = Parameter(DenseTensor(1, static_cast<std::size_t>(config_.out_dim)));
}

std::vector<Parameter*> BinGnnModel::parameters() {
  std::vector<Parameter*> out;
  for (Layer& l : layers_) {
    out.push_back(&l.weight);
    if (l.has_bias) out.push_back(&l.bias);
    if (l.encoder) {
      out.push_back(&l.encoder->weight());
      if (l.encoder->has_bias()) out.push_back(&l.encoder->bias());
    }
  }
  out.push_back(&head_weight_);
  out.push_back(&head_bias_);
  return out;
}

std::vector<const Parameter*> BinGnnModel::parameters() const {
  std::vector<const Parameter*> out;
  for (Parameter* p : const_cast<BinGnnModel*>(this)->parameters()) out.push_back(p);
  return out;
}

Var BinGnnModel::transform(Tape& tape, Layer& layer, Var h, const ForwardOptions& opts) {
  Var out;
  if (layer.spec.precision == Precision::kFull) {
    out = matmul(h, tape.parameter(layer.weight));
  } else {
    Var xb = sign_binarize(h);
    Var wb = sign_binarize(tape.parameter(layer.weight));
    Var raw = xnor_matmul(xb, wb);
    if (opts.check_kernel_parity && !(raw.value() == matmul_values(xb.value(), wb.value()))) {
      throw std::logic_error("binary kernel disagrees with the float sign-matmul path");
    }
    out = scalar_mul(raw, 1.0f / std::sqrt(static_cast<float>(layer.weight.value.rows())));
  }
  return out;
}

Var BinGnnModel::aggregate_step(Tape& tape, Layer& layer, const Graph& g, Var h, Mode mode,
                                GumbelSampler& sampler) {
  const AggMode& agg = layer.spec.agg;
  switch (agg.kind) {
    case AggMode::Kind::kFixed:
      return aggregate(agg.fixed, g, h);
    case AggMode::Kind::kMixedSum:
      return mixed_sum_aggregate(g, h, config_.pool);
    case AggMode::Kind::kMixedConcat:
      return mixed_concat_aggregate(g, h, config_.pool);
    case AggMode::Kind::kGna: {
      Var logits = layer.encoder->forward(tape, g, h);
      if (mode == Mode::kTrain) {
        return gna_aggregate(g, h, gna_select(logits, sampler, Mode::kTrain), config_.pool);
      }
      const auto choice = gna_argmax(logits.value(), config_.gumbel_eval ? &sampler : nullptr);
      std::vector<AggregatorKind> kinds(choice.size());
      for (std::size_t i = 0; i < choice.size(); ++i) kinds[i] = config_.pool[choice[i]];
      return aggregate_per_node(g, h, kinds);
    }
    case AggMode::Kind::kAna:
      return ana_aggregate(g, h, beta_map_(layer.encoder->forward(tape, g, h)));
    case AggMode::Kind::kAnaHybrid:
      return ana_hybrid_aggregate(g, h, layer.encoder->forward(tape, g, h), agg.hybrid_terms,
                                  beta_map_);
  }
  throw std::logic_error("unhandled aggregation mode");
}

Var BinGnnModel::run_layer(Tape& tape, Layer& layer, const Graph& g, Var h, Mode mode,
                           GumbelSampler& sampler, const ForwardOptions& opts) {
  Var out;
  if (layer.spec.order == Order::kTransformFirst) {
    out = aggregate_step(tape, layer, g, transform(tape, layer, h, opts), mode, sampler);
  } else {
    out = transform(tape, layer, aggregate_step(tape, layer, g, h, mode, sampler), opts);
  }
  // The bias follows the aggregation so it can shift a sum or a spread
  // statistic across the sign threshold of the next binary layer.
  if (layer.has_bias) out = add(out, tape.parameter(layer.bias));
  return layer.spec.relu ? relu(out) : out;
}

Var BinGnnModel::forward_nodes(Tape& tape, const Graph& g, Mode mode, GumbelSampler& sampler,
                               const ForwardOptions& opts) {
  if (g.feat_dim() != layers_.front().spec.in_dim) {
    throw std::invalid_argument("forward: feature width " + std::to_string(g.feat_dim()) +
                                " != model input width " +
                                std::to_string(layers_.front().spec.in_dim));
  }
  Var h = tape.constant(g.features());
  for (Layer& layer : layers_) h = run_layer(tape, layer, g, h, mode, sampler, opts);
  return h;
}

Var BinGnnModel::forward(Tape& tape, const GraphBatch& batch, Mode mode, GumbelSampler& sampler,
                         const ForwardOptions& opts) {
  Var h = forward_nodes(tape, batch.graph, mode, sampler, opts);
  if (config_.task != Task::kNodeClassification) {
    h = segment_mean(h, batch.segment, batch.num_graphs);
  }
  return add(matmul(h, tape.parameter(head_weight_)), tape.parameter(head_bias_));
}

SizeReport BinGnnModel::inspect() const {
  SizeReport r;
  auto add_entry = [&r](std::string name, const DenseTensor& t, Precision p, bool encoder) {
    SizeEntry e{std::move(name), t.size(), p, 0};
    e.bits = p == Precision::kFull ? 32 * t.size() : packed_bits(t.rows(), t.cols());
    r.param_count += e.params;
    (p == Precision::kFull ? r.full_params : r.binary_params) += e.params;
    if (encoder) r.encoder_bits += e.bits;
    r.total_bits += e.bits;
    r.entries.push_back(std::move(e));
  };
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const std::string prefix = "layer" + std::to_string(l);
    add_entry(prefix + ".weight", layer.weight.value, layer.spec.precision, false);
    if (layer.has_bias) add_entry(prefix + ".bias", layer.bias.value, Precision::kFull, false);
    if (layer.encoder) {
      add_entry(prefix + ".encoder.weight", layer.encoder->weight().value, Precision::kBinary,
                true);
      if (layer.encoder->has_bias()) {
        add_entry(prefix + ".encoder.bias", layer.encoder->bias().value, Precision::kFull, true);
      }
    }
  }
  add_entry("head.weight", head_weight_.value, Precision::kFull, false);
  add_entry("head.bias", head_bias_.value, Precision::kFull, false);
  return r;
}

}  // namespace bingnn
