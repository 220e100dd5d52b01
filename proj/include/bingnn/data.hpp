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

#ifndef BINGNN_DATA_HPP_
#define BINGNN_DATA_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bingnn/aggregators.hpp"
#include "bingnn/analyze.hpp"
#include "bingnn/graph.hpp"

namespace bingnn {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Split : std::uint8_t { kTrain = 0, kVal = 1, kTest = 2 };

struct Dataset {
  std::vector<Graph> graphs;
  /// Consecutive runs of this many graphs share a split (pairs stay together).
  std::size_t split_group = 1;

  std::size_t size() const { return graphs.size(); }
  bool empty() const { return graphs.empty(); }
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// 8:1:1 assignment from a hash of (seed, index / group).
Split split_of(std::uint64_t seed, std::size_t index, std::size_t group = 1);
std::vector<std::size_t> split_indices(const Dataset& data, Split which, std::uint64_t seed);

/// GTXT text. Undirected edges are expanded and self-loops inserted. Errors
/// carry the 1-based line number.
Dataset parse_gtxt(std::string_view text);
Dataset load_gtxt(const std::string& path);
/// Writes each undirected edge once (as src > dst) and omits self-loops, so
/// parse_gtxt(format_gtxt(d)) == d for graphs built by the loader rules.
std::string format_gtxt(const Dataset& data);
void write_gtxt(const Dataset& data, const std::string& path);

struct TopologyPairOptions {
  /// Largest neighborhood size. Class 0 multisets have size <= max_degree/2,
  /// class 1 multisets are larger.
  int max_degree = 4;
  int lo = 1;
  int hi = 4;
  /// Number of (class 0, class 1) couples to emit.
  std::size_t num_pairs = 200;
  std::uint64_t seed = 0;
  /// The aggregator that must collide on every emitted couple.
  AggregatorKind designated = AggregatorKind::kMean;
};

/// Certified candidate couples: the designated aggregator collides, the pair
/// is not a full-pool collision, sum tells the two apart, some ANA term
/// separates them, and neither side repeats the value proportions of a
/// smaller multiset. Throws DataError if none exist.
std::vector<CollisionRow> topology_pair_candidates(const TopologyPairOptions& opts);

/// Two-class graph classification set. Each couple becomes two complete
/// graphs whose node values are the two multisets, so every node aggregates
/// exactly the multiset. target[0] is the class; split_group = 2.
Dataset gen_topology_pairs(const TopologyPairOptions& opts);

/// Mean closed-neighborhood range:
///   t(G) = (1/N) sum_i (max_{j in N[i]} x_j - min_{j in N[i]} x_j)
/// over feature channel 0, N[i] the in-neighbors of i (self included).
float regression_target(const Graph& g);

/// Random connected graphs, 8..24 nodes, one integer feature in [0, 9],
/// target regression_target.
Dataset gen_regression(std::uint64_t seed, std::size_t n_graphs);

}  // namespace bingnn

#endif  // BINGNN_DATA_HPP_
