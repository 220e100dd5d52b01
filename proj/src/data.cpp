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

#include "bingnn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <type_traits>

namespace bingnn {

namespace {

constexpr std::uint64_t kRegressionStream = 10;
constexpr std::uint64_t kPairStream = 11;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0u};
  return std::mt19937_64(seq);
}

std::string format_float(float f) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, f);
  return std::string(buf, ptr);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw DataError("GTXT line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_tok(std::string_view tok, std::size_t line) {
  T out{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(line, "bad number '" + std::string(tok) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) fail(line, "non-finite value '" + std::string(tok) + "'");
  }
  return out;
}

struct PendingGraph {
  std::size_t header_line = 0;
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::size_t feat_dim = 0;
  std::vector<float> feats;
  std::vector<bool> seen;
  std::vector<Edge> edges;
  std::vector<float> target;
  std::vector<int> labels;
  bool any_label = false;

  Graph finish() {
    for (std::size_t i = 0; i < num_nodes; ++i) {
      if (!seen[i]) fail(header_line, "node " + std::to_string(i) + " has no 'node' line");
    }
    if (edges.size() != num_edges) {
      fail(header_line, "declared " + std::to_string(num_edges) + " edges, found " +
                            std::to_string(edges.size()));
    }
    Graph g = Graph::from_undirected_edges(num_nodes, edges,
                                           DenseTensor(num_nodes, feat_dim, std::move(feats)));
    g.set_graph_target(std::move(target));
    if (any_label) g.set_node_labels(std::move(labels));
    return g;
  }
};

}  // namespace

Split split_of(std::uint64_t seed, std::size_t index, std::size_t group) {
  const std::uint64_t g = index / std::max<std::size_t>(group, 1);
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ g);
  const std::uint64_t bucket = h % 10;
  return bucket < 8 ? Split::kTrain : bucket == 8 ? Split::kVal : Split::kTest;
}

std::vector<std::size_t> split_indices(const Dataset& data, Split which, std::uint64_t seed) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (split_of(seed, i, data.split_group) == which) out.push_back(i);
  return out;
}

Dataset parse_gtxt(std::string_view text) {
  Dataset data;
  PendingGraph cur;
  bool open = false;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string_view kw = tok[0];
    if (kw == "graph") {
      if (tok.size() != 4) fail(line_no, "expected 'graph <num_nodes> <num_edges> <feat_dim>'");
      if (open) data.graphs.push_back(cur.finish());
      cur = PendingGraph{};
      cur.header_line = line_no;
      cur.num_nodes = parse_tok<std::size_t>(tok[1], line_no);
      cur.num_edges = parse_tok<std::size_t>(tok[2], line_no);
      cur.feat_dim = parse_tok<std::size_t>(tok[3], line_no);
      cur.feats.assign(cur.num_nodes * cur.feat_dim, 0.0f);
      cur.seen.assign(cur.num_nodes, false);
      cur.labels.assign(cur.num_nodes, -1);
      open = true;
      continue;
    }
    if (!open) fail(line_no, "'" + std::string(kw) + "' before any 'graph' line");
    if (kw == "node") {
      if (tok.size() != 2 + cur.feat_dim) {
        fail(line_no, "expected " + std::to_string(cur.feat_dim) + " feature values");
      }
      const auto id = parse_tok<std::size_t>(tok[1], line_no);
      if (id >= cur.num_nodes) fail(line_no, "node index " + std::to_string(id) + " out of range");
      if (cur.seen[id]) fail(line_no, "node " + std::to_string(id) + " listed twice");
      cur.seen[id] = true;
      for (std::size_t c = 0; c < cur.feat_dim; ++c)
        cur.feats[id * cur.feat_dim + c] = parse_tok<float>(tok[2 + c], line_no);
    } else if (kw == "edge") {
      if (tok.size() != 3) fail(line_no, "expected 'edge <src> <dst>'");
      const auto s = parse_tok<std::size_t>(tok[1], line_no);
      const auto d = parse_tok<std::size_t>(tok[2], line_no);
      if (s >= cur.num_nodes || d >= cur.num_nodes) {
        fail(line_no, "edge endpoint out of range for " + std::to_string(cur.num_nodes) + " nodes");
      }
      cur.edges.push_back({s, d});
    } else if (kw == "target") {
      if (tok.size() < 2) fail(line_no, "empty target");
      if (!cur.target.empty()) fail(line_no, "second target line");
      for (std::size_t i = 1; i < tok.size(); ++i) cur.target.push_back(parse_tok<float>(tok[i], line_no));
    } else if (kw == "label") {
      if (tok.size() != 3) fail(line_no, "expected 'label <id> <class>'");
      const auto id = parse_tok<std::size_t>(tok[1], line_no);
      if (id >= cur.num_nodes) fail(line_no, "label index " + std::to_string(id) + " out of range");
      const int cls = parse_tok<int>(tok[2], line_no);
      if (cls < 0) fail(line_no, "negative class");
      cur.labels[id] = cls;
      cur.any_label = true;
    } else {
      fail(line_no, "unknown keyword '" + std::string(kw) + "'");
    }
  }
  if (open) data.graphs.push_back(cur.finish());
  return data;
}

Dataset load_gtxt(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read data file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gtxt(ss.str());
}

std::string format_gtxt(const Dataset& data) {
  std::string out;
  for (std::size_t k = 0; k < data.graphs.size(); ++k) {
    const Graph& g = data.graphs[k];
    if (k) out += '\n';
    std::vector<Edge> edges;
    for (const Edge& e : g.edge_list())
      if (e.src > e.dst) edges.push_back(e);
    out += "graph " + std::to_string(g.num_nodes()) + ' ' + std::to_string(edges.size()) + ' ' +
           std::to_string(g.feat_dim()) + '\n';
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
      out += "node " + std::to_string(i);
      for (float v : g.features().row(i)) out += ' ' + format_float(v);
      out += '\n';
    }
    for (const Edge& e : edges) out += "edge " + std::to_string(e.src) + ' ' + std::to_string(e.dst) + '\n';
    if (g.has_target()) {
      out += "target";
      for (float v : g.graph_target()) out += ' ' + format_float(v);
      out += '\n';
    }
    const auto& labels = g.node_labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] >= 0) out += "label " + std::to_string(i) + ' ' + std::to_string(labels[i]) + '\n';
  }
  return out;
}

void write_gtxt(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write data file '" + path + "'");
  out << format_gtxt(data);
  if (!out) throw DataError("short write to '" + path + "'");
}

namespace {

// The value proportions of `m` cannot be written with fewer elements.
bool primitive(const Multiset& m) {
  std::map<int, int> counts;
  for (int v : m) ++counts[v];
  int g = 0;
  for (const auto& [v, c] : counts) g = std::gcd(g, c);
  return g == 1;
}

Graph clique(const Multiset& values, float cls) {
  const std::size_t n = values.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) edges.push_back({i, j});
  DenseTensor feats(n, 1);
  for (std::size_t i = 0; i < n; ++i) feats(i, 0) = static_cast<float>(values[i]);
  Graph g = Graph::from_undirected_edges(n, edges, std::move(feats));
  g.set_graph_target({cls});
  return g;
}

}  // namespace

std::vector<CollisionRow> topology_pair_candidates(const TopologyPairOptions& opts) {
  if (opts.max_degree < 2) throw DataError("gen_topology_pairs: max_degree must be >= 2");
  CollisionReport report;
  try {
    report = enumerate_collisions(opts.max_degree, opts.lo, opts.hi);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("gen_topology_pairs: ") + e.what());
  }
  const std::size_t half = static_cast<std::size_t>(opts.max_degree) / 2;
  const auto sum = static_cast<std::size_t>(AggregatorKind::kSum);
  std::vector<CollisionRow> out;
  for (CollisionRow& r : report.rows) {
    if (!r.equal[static_cast<std::size_t>(opts.designated)]) continue;
    if (r.full_pool_collision() || r.equal[sum] || !r.ana_witness_beta) continue;
    if (r.a.size() > half || r.b.size() <= half) continue;
    if (!primitive(r.a) || !primitive(r.b)) continue;
    out.push_back(std::move(r));
  }
  if (out.empty()) throw DataError("gen_topology_pairs: no certified collision pairs for these bounds");
  return out;
}

Dataset gen_topology_pairs(const TopologyPairOptions& opts) {
  const auto candidates = topology_pair_candidates(opts);
  auto rng = make_rng(opts.seed, kPairStream);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  Dataset data;
  data.split_group = 2;
  for (std::size_t k = 0; k < opts.num_pairs; ++k) {
    const CollisionRow& row = candidates[pick(rng)];
    data.graphs.push_back(clique(row.a, 0.0f));
    data.graphs.push_back(clique(row.b, 1.0f));
  }
  return data;
}

float regression_target(const Graph& g) {
  if (g.num_nodes() == 0) return 0.0f;
  double total = 0.0;
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    float mx = -INFINITY, mn = INFINITY;
    for (std::size_t j : g.in_neighbors(i)) {
      mx = std::max(mx, g.features()(j, 0));
      mn = std::min(mn, g.features()(j, 0));
    }
    total += static_cast<double>(mx) - static_cast<double>(mn);
  }
  return static_cast<float>(total / static_cast<double>(g.num_nodes()));
}

Dataset gen_regression(std::uint64_t seed, std::size_t n_graphs) {
  if (n_graphs == 0) throw DataError("gen_regression: n_graphs must be >= 1");
  auto rng = make_rng(seed, kRegressionStream);
  std::uniform_int_distribution<int> size_dist(8, 24), feat_dist(0, 9);
  Dataset data;
  for (std::size_t k = 0; k < n_graphs; ++k) {
    const auto n = static_cast<std::size_t>(size_dist(rng));
    std::set<std::pair<std::size_t, std::size_t>> und;
    for (std::size_t i = 1; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> parent(0, i - 1);
      und.insert({i, parent(rng)});
    }
    std::uniform_int_distribution<std::size_t> node(0, n - 1);
    for (std::size_t e = 0; e < n / 2; ++e) {
      std::size_t u = node(rng), v = node(rng);
      if (u == v) continue;
      und.insert({std::max(u, v), std::min(u, v)});
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : und) edges.push_back({u, v});
    DenseTensor feats(n, 1);
    for (float& f : feats.values()) f = static_cast<float>(feat_dist(rng));
    Graph g = Graph::from_undirected_edges(n, edges, std::move(feats));
    g.set_graph_target({regression_target(g)});
    data.graphs.push_back(std::move(g));
  }
  return data;
}

}  // namespace bingnn
