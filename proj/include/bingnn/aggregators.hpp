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

#ifndef BINGNN_AGGREGATORS_HPP_
#define BINGNN_AGGREGATORS_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bingnn/autodiff.hpp"
#include "bingnn/graph.hpp"

namespace bingnn {

/// Candidate pool. The numeric values are stable: GNA logits and checkpoints
/// index by them.
enum class AggregatorKind : std::uint8_t {
  kMean = 0,
  kMax = 1,
  kMin = 2,
  kSum = 3,
  kStd = 4,
  kVar = 5,
};

inline constexpr std::array<AggregatorKind, 6> kFullPool = {
    AggregatorKind::kMean, AggregatorKind::kMax, AggregatorKind::kMin,
    AggregatorKind::kSum,  AggregatorKind::kStd, AggregatorKind::kVar};

std::string_view to_string(AggregatorKind kind);
/// Accepts "mean", "max", "min", "sum", "std", "var".
AggregatorKind parse_aggregator(std::string_view name);
/// Comma-separated list, e.g. "mean,max,sum". Sorted into pool order,
/// duplicates rejected.
std::vector<AggregatorKind> parse_pool(std::string_view list);
std::string pool_to_string(std::span<const AggregatorKind> pool);

/// Per-channel statistic of {feats[j] : (j, i) in E} for every node i. `g`
/// must outlive the tape: the backward pass reads its adjacency.
/// std and var use the population formula; max/min gradients go to the first
/// extremal source and std has zero gradient at zero variance.
Var aggregate(AggregatorKind kind, const Graph& g, Var feats);

/// Node i uses `kinds[i]`. Used for hard (one-hot) meta selection, where only
/// the chosen statistic is evaluated per node.
Var aggregate_per_node(const Graph& g, Var feats, std::span<const AggregatorKind> kinds);

/// Sum of the individual aggregates.
Var mixed_sum_aggregate(const Graph& g, Var feats, std::span<const AggregatorKind> kinds);
/// Column concatenation [N x d*|kinds|] in the order given.
Var mixed_concat_aggregate(const Graph& g, Var feats, std::span<const AggregatorKind> kinds);

}  // namespace bingnn

#endif  // BINGNN_AGGREGATORS_HPP_
