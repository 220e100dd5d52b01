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

#ifndef BINGNN_MODEL_HPP_
#define BINGNN_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bingnn/autodiff.hpp"
#include "bingnn/config.hpp"
#include "bingnn/graph.hpp"
#include "bingnn/meta.hpp"

namespace bingnn {

enum class Precision : std::uint8_t { kFull = 0, kBinary = 1 };

struct LayerSpec {
  /// Width of the features entering the layer.
  std::size_t in_dim = 0;
  /// Width of the transform output.
  std::size_t out_dim = 0;
  Order order = Order::kTransformFirst;
  Precision precision = Precision::kFull;
  AggMode agg;
  /// ReLU after the layer. Off when the next layer is binary: its sign() is
  /// the activation, and sign(relu(x)) would be constant.
  bool relu = true;

  /// Rows of the weight matrix (in_dim, times the pool size for
  /// aggregate-first concatenation).
  std::size_t weight_rows(std::size_t pool_size) const;
  /// Width of the layer output.
  std::size_t output_dim(std::size_t pool_size) const;
  /// Width of the features the aggregator (and the encoder) sees.
  std::size_t aggregated_dim() const;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct Layer {
  LayerSpec spec;
  Parameter weight;
  Parameter bias;
  bool has_bias = false;
  std::optional<BinaryGraphAutoEncoder> encoder;
};

/// One stored tensor in the size report.
struct SizeEntry {
  std::string name;
  std::size_t params = 0;
  Precision precision = Precision::kFull;
  /// Serialized bits: 32 per full-precision value, one bit per binary value
  /// plus row padding to whole 64-bit words.
  std::size_t bits = 0;
};

struct SizeReport {
  std::vector<SizeEntry> entries;
  std::size_t param_count = 0;
  std::size_t full_params = 0;
  std::size_t binary_params = 0;
  std::size_t encoder_bits = 0;
  std::size_t total_bits = 0;

  /// total_bits / 8 / 1024.
  double kilobytes() const { return static_cast<double>(total_bits) / 8192.0; }
};

struct ForwardOptions {
  /// Recompute every binary pre-activation with a float sign-matmul and throw
  /// std::logic_error on any difference.
  bool check_kernel_parity = false;
};

class BinGnnModel {
 public:
  /// in_dim and out_dim must be resolved (> 0). `seed` drives initialization.
  explicit BinGnnModel(const ModelConfig& config);

  const ModelConfig& config() const { return config_; }
  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }
  Parameter& head_weight() { return head_weight_; }
  const Parameter& head_weight() const { return head_weight_; }
  Parameter& head_bias() { return head_bias_; }
  const Parameter& head_bias() const { return head_bias_; }

  /// Every trainable tensor in a fixed order.
  std::vector<Parameter*> parameters();
  std::vector<const Parameter*> parameters() const;

  /// Node representations after the last message-passing layer.
  Var forward_nodes(Tape& tape, const Graph& g, Mode mode, GumbelSampler& sampler,
                    const ForwardOptions& opts = {});
  /// Graph tasks: [num_graphs x out_dim] after mean-pool and head. Node
  /// tasks: [num_nodes x out_dim].
  Var forward(Tape& tape, const GraphBatch& batch, Mode mode, GumbelSampler& sampler,
              const ForwardOptions& opts = {});

  SizeReport inspect() const;

 private:
  Var run_layer(Tape& tape, Layer& layer, const Graph& g, Var h, Mode mode,
                GumbelSampler& sampler, const ForwardOptions& opts);
  Var transform(Tape& tape, Layer& layer, Var h, const ForwardOptions& opts);
  Var aggregate_step(Tape& tape, Layer& layer, const Graph& g, Var h, Mode mode,
                     GumbelSampler& sampler);

  ModelConfig config_;
  std::vector<Layer> layers_;
  Parameter head_weight_;
  Parameter head_bias_;
  BetaMap beta_map_;
};

/// Layer plan implied by a config: first and last layer full precision, the
/// middle ones binary when `config.binary`.
std::vector<LayerSpec> plan_layers(const ModelConfig& config);

/// Encoder output width for an aggregation mode (0 when it has none).
std::size_t encoder_width(const AggMode& mode, std::size_t pool_size);

}  // namespace bingnn

#endif  // BINGNN_MODEL_HPP_
