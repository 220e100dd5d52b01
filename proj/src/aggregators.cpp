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

#include "bingnn/aggregators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bingnn {

std::string_view to_string(AggregatorKind kind) {
  switch (kind) {
    case AggregatorKind::kMean:
      return "mean";
    case AggregatorKind::kMax:
      return "max";
    case AggregatorKind::kMin:
      return "min";
    case AggregatorKind::kSum:
      return "sum";
    case AggregatorKind::kStd:
      return "std";
    case AggregatorKind::kVar:
      return "var";
  }
  return "?";
}

AggregatorKind parse_aggregator(std::string_view name) {
  for (AggregatorKind k : kFullPool)
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown aggregator '" + std::string(name) + "'");
}

std::vector<AggregatorKind> parse_pool(std::string_view list) {
  std::vector<AggregatorKind> pool;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const AggregatorKind k = parse_aggregator(list.substr(start, comma - start));
    if (std::find(pool.begin(), pool.end(), k) != pool.end()) {
      throw std::invalid_argument("duplicate aggregator '" + std::string(to_string(k)) + "'");
    }
    pool.push_back(k);
    start = comma + 1;
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::string pool_to_string(std::span<const AggregatorKind> pool) {
  std::string s;
  for (AggregatorKind k : pool) {
    if (!s.empty()) s += ',';
    s += to_string(k);
  }
  return s;
}

namespace {

constexpr std::uint32_t kNoArg = 0xffffffffu;

bool needs_arg(AggregatorKind k) { return k == AggregatorKind::kMax || k == AggregatorKind::kMin; }

// Forward values for node i into `out`; records extremal sources in `arg`.
void forward_node(AggregatorKind kind, const DenseTensor& x, std::span<const std::size_t> nbrs,
                  std::span<float> out, std::uint32_t* arg) {
  const std::size_t d = out.size();
  if (nbrs.empty()) throw std::invalid_argument("aggregate: node with empty neighborhood");
  const float inv_deg = 1.0f / static_cast<float>(nbrs.size());
  switch (kind) {
    case AggregatorKind::kSum:
    case AggregatorKind::kMean: {
      std::fill(out.begin(), out.end(), 0.0f);
      for (std::size_t j : nbrs) {
        auto xj = x.row(j);
        for (std::size_t c = 0; c < d; ++c) out[c] += xj[c];
      }
      if (kind == AggregatorKind::kMean)
        for (float& v : out) v *= inv_deg;
      return;
    }
    case AggregatorKind::kMax:
    case AggregatorKind::kMin: {
      const bool is_max = kind == AggregatorKind::kMax;
      auto x0 = x.row(nbrs[0]);
      for (std::size_t c = 0; c < d; ++c) {
        out[c] = x0[c];
        arg[c] = static_cast<std::uint32_t>(nbrs[0]);
      }
      for (std::size_t n = 1; n < nbrs.size(); ++n) {
        auto xj = x.row(nbrs[n]);
        for (std::size_t c = 0; c < d; ++c) {
          if (is_max ? xj[c] > out[c] : xj[c] < out[c]) {
            out[c] = xj[c];
            arg[c] = static_cast<std::uint32_t>(nbrs[n]);
          }
        }
      }
      return;
    }
    case AggregatorKind::kVar:
    case AggregatorKind::kStd: {
      std::vector<float> mu(d, 0.0f);
      for (std::size_t j : nbrs) {
        auto xj = x.row(j);
        for (std::size_t c = 0; c < d; ++c) mu[c] += xj[c];
      }
      for (float& m : mu) m *= inv_deg;
      std::fill(out.begin(), out.end(), 0.0f);
      for (std::size_t j : nbrs) {
        auto xj = x.row(j);
        for (std::size_t c = 0; c < d; ++c) {
          const float dv = xj[c] - mu[c];
          out[c] += dv * dv;
        }
      }
      for (float& v : out) v *= inv_deg;
      if (kind == AggregatorKind::kStd)
        for (float& v : out) v = std::sqrt(v);
      return;
    }
  }
}

void backward_node(AggregatorKind kind, const DenseTensor& x, std::span<const std::size_t> nbrs,
                   std::span<const float> out, std::span<const float> g, const std::uint32_t* arg,
                   DenseTensor& gx) {
  const std::size_t d = g.size();
  const float inv_deg = 1.0f / static_cast<float>(nbrs.size());
  switch (kind) {
    case AggregatorKind::kSum:
    case AggregatorKind::kMean: {
      const float s = kind == AggregatorKind::kMean ? inv_deg : 1.0f;
      for (std::size_t j : nbrs) {
        auto gj = gx.row(j);
        for (std::size_t c = 0; c < d; ++c) gj[c] += g[c] * s;
      }
      return;
    }
    case AggregatorKind::kMax:
    case AggregatorKind::kMin:
      for (std::size_t c = 0; c < d; ++c) gx(arg[c], c) += g[c];
      return;
    case AggregatorKind::kVar:
    case AggregatorKind::kStd: {
      std::vector<float> mu(d, 0.0f);
      for (std::size_t j : nbrs) {
        auto xj = x.row(j);
        for (std::size_t c = 0; c < d; ++c) mu[c] += xj[c];
      }
      for (float& m : mu) m *= inv_deg;
      // d var / d x_j = 2 (x_j - mu) / deg; d std = d var / (2 std).
      std::vector<float> scale(d);
      for (std::size_t c = 0; c < d; ++c) {
        if (kind == AggregatorKind::kVar) {
          scale[c] = 2.0f * inv_deg * g[c];
        } else {
          scale[c] = out[c] > 0.0f ? inv_deg * g[c] / out[c] : 0.0f;
        }
      }
      for (std::size_t j : nbrs) {
        auto xj = x.row(j);
        auto gj = gx.row(j);
        for (std::size_t c = 0; c < d; ++c) gj[c] += scale[c] * (xj[c] - mu[c]);
      }
      return;
    }
  }
}

// `kind_of(i)` selects the statistic of node i.
template <typename KindOf>
Var aggregate_impl(const Graph& g, Var feats, KindOf kind_of, bool any_arg) {
  Tape& t = *feats.tape();
  const DenseTensor& x = feats.value();
  if (x.rows() != g.num_nodes()) {
    throw std::invalid_argument("aggregate: feature rows " + std::to_string(x.rows()) +
                                " != nodes " + std::to_string(g.num_nodes()));
  }
  const std::size_t n = g.num_nodes(), d = x.cols();
  DenseTensor out(n, d);
  std::vector<std::uint32_t> arg(any_arg ? n * d : 0, kNoArg);
  for (std::size_t i = 0; i < n; ++i) {
    const AggregatorKind k = kind_of(i);
    forward_node(k, x, g.in_neighbors(i), out.row(i), needs_arg(k) ? arg.data() + i * d : nullptr);
  }
  const auto ix = feats.id();
  return t.record(std::move(out), {feats},
                  [ix, &g, kind_of, arg = std::move(arg)](Tape& t, std::uint32_t self) {
                    const DenseTensor& gout = t.grad_buffer(self);
                    const DenseTensor& out = t.value(self);
                    const DenseTensor& x = t.value(ix);
                    DenseTensor& gx = t.grad_buffer(ix);
                    const std::size_t d = x.cols();
                    for (std::size_t i = 0; i < out.rows(); ++i) {
                      const AggregatorKind k = kind_of(i);
                      backward_node(k, x, g.in_neighbors(i), out.row(i), gout.row(i),
                                    needs_arg(k) ? arg.data() + i * d : nullptr, gx);
                    }
                  });
}

}  // namespace

Var aggregate(AggregatorKind kind, const Graph& g, Var feats) {
  return aggregate_impl(g, feats, [kind](std::size_t) { return kind; }, needs_arg(kind));
}

Var aggregate_per_node(const Graph& g, Var feats, std::span<const AggregatorKind> kinds) {
  if (kinds.size() != g.num_nodes()) {
    throw std::invalid_argument("aggregate_per_node: one kind per node required");
  }
  const bool any_arg = std::any_of(kinds.begin(), kinds.end(), needs_arg);
  std::vector<AggregatorKind> owned(kinds.begin(), kinds.end());
  return aggregate_impl(
      g, feats, [owned = std::move(owned)](std::size_t i) { return owned[i]; }, any_arg);
}

Var mixed_sum_aggregate(const Graph& g, Var feats, std::span<const AggregatorKind> kinds) {
  if (kinds.empty()) throw std::invalid_argument("mixed_sum_aggregate: empty aggregator list");
  Var acc = aggregate(kinds[0], g, feats);
  for (std::size_t k = 1; k < kinds.size(); ++k) acc = add(acc, aggregate(kinds[k], g, feats));
  return acc;
}

Var mixed_concat_aggregate(const Graph& g, Var feats, std::span<const AggregatorKind> kinds) {
  if (kinds.empty()) throw std::invalid_argument("mixed_concat_aggregate: empty aggregator list");
  std::vector<Var> parts;
  parts.reserve(kinds.size());
  for (AggregatorKind k : kinds) parts.push_back(aggregate(k, g, feats));
  return concat_cols(parts);
}

}  // namespace bingnn
