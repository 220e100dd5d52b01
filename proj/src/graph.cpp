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

#include "bingnn/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bingnn {

Graph Graph::from_directed_edges(std::size_t num_nodes, std::span<const Edge> edges,
                                 DenseTensor features) {
  if (features.rows() != num_nodes) {
    throw std::invalid_argument("Graph: " + std::to_string(features.rows()) +
                                " feature rows for " + std::to_string(num_nodes) + " nodes");
  }
  std::vector<Edge> sorted(edges.begin(), edges.end());
  for (const Edge& e : sorted) {
    if (e.src >= num_nodes || e.dst >= num_nodes) {
      throw std::out_of_range("Graph: edge (" + std::to_string(e.src) + ", " +
                              std::to_string(e.dst) + ") outside " + std::to_string(num_nodes) +
                              " nodes");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return a.dst != b.dst ? a.dst < b.dst : a.src < b.src;
  });
  std::vector<std::size_t> offsets(num_nodes + 1, 0);
  std::vector<std::size_t> sources;
  sources.reserve(sorted.size());
  for (const Edge& e : sorted) {
    ++offsets[e.dst + 1];
    sources.push_back(e.src);
  }
  for (std::size_t i = 0; i < num_nodes; ++i) offsets[i + 1] += offsets[i];
  return from_csr(std::move(offsets), std::move(sources), std::move(features));
}

Graph Graph::from_undirected_edges(std::size_t num_nodes, std::span<const Edge> edges,
                                   DenseTensor features) {
  std::vector<Edge> directed;
  directed.reserve(2 * edges.size() + num_nodes);
  for (const Edge& e : edges) {
    if (e.src == e.dst) continue;
    directed.push_back(e);
    directed.push_back({e.dst, e.src});
  }
  for (std::size_t i = 0; i < num_nodes; ++i) directed.push_back({i, i});
  return from_directed_edges(num_nodes, directed, std::move(features));
}

Graph Graph::from_csr(std::vector<std::size_t> row_offsets, std::vector<std::size_t> sources,
                      DenseTensor features) {
  if (row_offsets.empty() || row_offsets.front() != 0) {
    throw std::invalid_argument("Graph: row offsets must start at 0");
  }
  const std::size_t n = row_offsets.size() - 1;
  if (features.rows() != n) throw std::invalid_argument("Graph: feature rows != node count");
  for (std::size_t i = 0; i < n; ++i) {
    if (row_offsets[i + 1] < row_offsets[i]) {
      throw std::invalid_argument("Graph: row offsets decrease at node " + std::to_string(i));
    }
  }
  if (row_offsets.back() != sources.size()) {
    throw std::invalid_argument("Graph: final offset != edge count");
  }
  for (std::size_t s : sources) {
    if (s >= n) throw std::out_of_range("Graph: source index " + std::to_string(s));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(sources.begin() + static_cast<std::ptrdiff_t>(row_offsets[i]),
              sources.begin() + static_cast<std::ptrdiff_t>(row_offsets[i + 1]));
  }
  Graph g;
  g.num_nodes_ = n;
  g.row_offsets_ = std::move(row_offsets);
  g.sources_ = std::move(sources);
  g.features_ = std::move(features);
  return g;
}

std::size_t Graph::in_degree(std::size_t node) const {
  if (node >= num_nodes_) {
    throw std::out_of_range("in_degree: node " + std::to_string(node) + " >= " +
                            std::to_string(num_nodes_));
  }
  return row_offsets_[node + 1] - row_offsets_[node];
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> edges;
  edges.reserve(sources_.size());
  for (std::size_t i = 0; i < num_nodes_; ++i)
    for (std::size_t j : in_neighbors(i)) edges.push_back({j, i});
  return edges;
}

void Graph::set_node_labels(std::vector<int> labels) {
  if (!labels.empty() && labels.size() != num_nodes_) {
    throw std::invalid_argument("Graph: label count != node count");
  }
  node_labels_ = std::move(labels);
}

GraphBatch batch(std::span<const Graph* const> graphs) {
  GraphBatch b;
  b.num_graphs = graphs.size();
  if (graphs.empty()) return b;
  const std::size_t d = graphs.front()->feat_dim();
  std::size_t total_nodes = 0, total_edges = 0;
  std::size_t target_width = graphs.front()->graph_target().size();
  bool all_targets = target_width > 0;
  bool any_labels = false;
  for (const Graph* g : graphs) {
    if (g->feat_dim() != d) {
      throw std::invalid_argument("batch: feature width " + std::to_string(g->feat_dim()) +
                                  " != " + std::to_string(d));
    }
    total_nodes += g->num_nodes();
    total_edges += g->num_edges();
    all_targets = all_targets && g->graph_target().size() == target_width;
    any_labels = any_labels || !g->node_labels().empty();
  }
  std::vector<std::size_t> offsets;
  offsets.reserve(total_nodes + 1);
  offsets.push_back(0);
  std::vector<std::size_t> sources;
  sources.reserve(total_edges);
  std::vector<float> feats;
  feats.reserve(total_nodes * d);
  std::vector<int> labels;
  b.segment.reserve(total_nodes);
  b.node_offset.reserve(graphs.size() + 1);
  std::size_t base = 0;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const Graph& g = *graphs[k];
    b.node_offset.push_back(base);
    const auto ro = g.row_offsets();
    const std::size_t edge_base = sources.size();
    for (std::size_t i = 0; i < g.num_nodes(); ++i) offsets.push_back(edge_base + ro[i + 1]);
    for (std::size_t s : g.sources()) sources.push_back(s + base);
    const auto fv = g.features().values();
    feats.insert(feats.end(), fv.begin(), fv.end());
    if (any_labels) {
      if (g.node_labels().empty())
        labels.insert(labels.end(), g.num_nodes(), -1);
      else
        labels.insert(labels.end(), g.node_labels().begin(), g.node_labels().end());
    }
    b.segment.insert(b.segment.end(), g.num_nodes(), k);
    base += g.num_nodes();
  }
  b.node_offset.push_back(base);
  b.graph = Graph::from_csr(std::move(offsets), std::move(sources),
                            DenseTensor(total_nodes, d, std::move(feats)));
  if (any_labels) b.graph.set_node_labels(std::move(labels));
  if (all_targets) {
    b.targets = DenseTensor(graphs.size(), target_width);
    for (std::size_t k = 0; k < graphs.size(); ++k)
      for (std::size_t c = 0; c < target_width; ++c) b.targets(k, c) = graphs[k]->graph_target()[c];
  }
  return b;
}

GraphBatch batch(std::span<const Graph> graphs) {
  std::vector<const Graph*> ptrs;
  ptrs.reserve(graphs.size());
  for (const Graph& g : graphs) ptrs.push_back(&g);
  return batch(std::span<const Graph* const>(ptrs));
}

}  // namespace bingnn
