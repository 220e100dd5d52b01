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

#ifndef BINGNN_CONFIG_HPP_
#define BINGNN_CONFIG_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bingnn/aggregators.hpp"

namespace bingnn {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Task { kGraphRegression, kGraphClassification, kNodeClassification };
enum class Order { kTransformFirst, kAggregateFirst };

struct AggMode {
  enum class Kind { kFixed, kMixedSum, kMixedConcat, kGna, kAna, kAnaHybrid };
  Kind kind = Kind::kFixed;
  AggregatorKind fixed = AggregatorKind::kMean;
  /// Number of hybrid terms, 1..3 (kAnaHybrid only).
  int hybrid_terms = 1;

  bool is_meta() const { return kind == Kind::kGna || kind == Kind::kAna || kind == Kind::kAnaHybrid; }
  friend bool operator==(const AggMode&, const AggMode&) = default;
};

std::string_view to_string(Task task);
std::string_view to_string(Order order);
std::string to_string(const AggMode& mode);
/// "fixed:<kind>", "mixed_sum", "mixed_concat", "gna", "ana", "ana_hybrid:<h>".
AggMode parse_agg_mode(std::string_view text);

struct ModelConfig {
  Task task = Task::kGraphRegression;
  int layers = 4;
  int hidden_dim = 64;
  /// 0 means "take from the data".
  int in_dim = 0;
  int out_dim = 0;
  /// Width of the last message-passing layer; 0 means hidden_dim.
  int readout_dim = 0;
  Order order = Order::kTransformFirst;
  AggMode agg_mode;
  std::vector<AggregatorKind> pool{kFullPool.begin(), kFullPool.end()};
  bool binary = true;
  bool bias = true;

  float tau = 1.0f;
  bool tau_anneal = false;
  bool gumbel_eval = false;
  float beta_min = 0.1f;
  float beta_max = 10.0f;

  float lr = 1e-3f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float eps = 1e-8f;
  int epochs = 100;
  int batch_size = 32;
  std::uint64_t seed = 0;

  int effective_readout_dim() const { return readout_dim > 0 ? readout_dim : hidden_dim; }

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// key=value lines; '#' starts a comment. Unknown keys, malformed values and
/// a missing `task` throw ConfigError naming the key.
ModelConfig parse_config(std::string_view text);
ModelConfig load_config(const std::string& path);
/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ModelConfig& config);

}  // namespace bingnn

#endif  // BINGNN_CONFIG_HPP_
