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

#ifndef BINGNN_GRAPH_HPP_
#define BINGNN_GRAPH_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bingnn/tensor.hpp"

namespace bingnn {

/// Directed edge; messages flow src -> dst.
struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable destination-major CSR graph with dense node features.
///
/// Row i of the CSR lists the sources j of every edge (j, i); the sources in a
/// row are sorted, so the stored form does not depend on input edge order.
class Graph {
 public:
  Graph() = default;

  /// CSR built exactly from `edges`, no self-loops added.
  static Graph from_directed_edges(std::size_t num_nodes, std::span<const Edge> edges,
                                   DenseTensor features);
  /// Load-time rule: every undirected edge {u, v} becomes (u, v) and (v, u),
  /// explicit self-loops are dropped, and each node receives exactly one
  /// self-loop.
  static Graph from_undirected_edges(std::size_t num_nodes, std::span<const Edge> edges,
                                     DenseTensor features);
  /// Adopts CSR arrays after validating them.
  static Graph from_csr(std::vector<std::size_t> row_offsets, std::vector<std::size_t> sources,
                        DenseTensor features);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return sources_.size(); }
  std::size_t feat_dim() const { return features_.cols(); }

  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const std::size_t> sources() const { return sources_; }
  /// Sources of the in-edges of `node`.
  std::span<const std::size_t> in_neighbors(std::size_t node) const {
    return {sources_.data() + row_offsets_[node], row_offsets_[node + 1] - row_offsets_[node]};
  }
  /// CSR row length. Throws std::out_of_range for a bad index.
  std::size_t in_degree(std::size_t node) const;

  /// Every directed edge, destination-major.
  std::vector<Edge> edge_list() const;

  const DenseTensor& features() const { return features_; }

  bool has_target() const { return !graph_target_.empty(); }
  const std::vector<float>& graph_target() const { return graph_target_; }
  void set_graph_target(std::vector<float> target) { graph_target_ = std::move(target); }

  /// Per-node class, -1 where a node carries no label. Empty when the graph
  /// has no labels at all.
  const std::vector<int>& node_labels() const { return node_labels_; }
  void set_node_labels(std::vector<int> labels);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> sources_;
  DenseTensor features_;
  std::vector<float> graph_target_;
  std::vector<int> node_labels_;
};

/// Disjoint union of graphs with node indices offset per member.
struct GraphBatch {
  Graph graph;
  /// Originating graph of each node; sorted and covering [0, num_graphs).
  std::vector<std::size_t> segment;
  /// First node index of every member, plus a final total.
  std::vector<std::size_t> node_offset;
  std::size_t num_graphs = 0;
  /// Stacked graph targets [num_graphs x k]; empty if any member lacks one.
  DenseTensor targets;
};

/// Throws std::invalid_argument when feature widths differ.
GraphBatch batch(std::span<const Graph* const> graphs);
GraphBatch batch(std::span<const Graph> graphs);

}  // namespace bingnn

#endif  // BINGNN_GRAPH_HPP_
