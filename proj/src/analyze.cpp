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

#include "bingnn/analyze.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bingnn {

namespace {

constexpr double kMixedTolerance = 1e-9;
constexpr double kAnaTolerance = 1e-6;

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Values of the three ANA terms at every grid beta.
std::vector<double> ana_profile(const Multiset& m, const std::vector<double>& grid) {
  std::vector<double> out;
  out.reserve(3 * grid.size());
  for (double beta : grid) {
    out.push_back(ana_value(m, beta));
    out.push_back(ana_min_value(m, beta));
    out.push_back(ana_var_value(m, beta));
  }
  return out;
}

std::optional<double> first_witness(const std::vector<double>& pa, const std::vector<double>& pb,
                                    const std::vector<double>& grid) {
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t t = 0; t < 3; ++t) {
      if (std::abs(pa[3 * g + t] - pb[3 * g + t]) > kAnaTolerance) return grid[g];
    }
  }
  return std::nullopt;
}

void fill_verdicts(CollisionRow& row, const MultisetStats& sa, const MultisetStats& sb) {
  double mixed_a = 0.0, mixed_b = 0.0;
  bool all = true;
  for (AggregatorKind k : kFullPool) {
    const bool eq = aggregator_equal(k, sa, sb);
    row.equal[static_cast<std::size_t>(k)] = eq;
    all = all && eq;
    mixed_a += sa.value(k);
    mixed_b += sb.value(k);
  }
  row.mixed_concat_equal = all;
  row.mixed_sum_equal = std::abs(mixed_a - mixed_b) <= kMixedTolerance;
}

}  // namespace

double MultisetStats::mean() const { return static_cast<double>(sum) / static_cast<double>(n); }

double MultisetStats::var() const {
  return static_cast<double>(n * sum_sq - sum * sum) / static_cast<double>(n * n);
}

double MultisetStats::stddev() const { return std::sqrt(var()); }

double MultisetStats::value(AggregatorKind kind) const {
  switch (kind) {
    case AggregatorKind::kMean:
      return mean();
    case AggregatorKind::kMax:
      return max;
    case AggregatorKind::kMin:
      return min;
    case AggregatorKind::kSum:
      return static_cast<double>(sum);
    case AggregatorKind::kStd:
      return stddev();
    case AggregatorKind::kVar:
      return var();
  }
  return 0.0;
}

MultisetStats multiset_stats(const Multiset& m) {
  if (m.empty()) throw std::invalid_argument("multiset_stats: empty multiset");
  MultisetStats s;
  s.n = static_cast<long long>(m.size());
  s.max = m.front();
  s.min = m.front();
  for (int v : m) {
    s.sum += v;
    s.sum_sq += static_cast<long long>(v) * v;
    s.max = std::max(s.max, v);
    s.min = std::min(s.min, v);
  }
  return s;
}

bool aggregator_equal(AggregatorKind kind, const MultisetStats& a, const MultisetStats& b) {
  switch (kind) {
    case AggregatorKind::kMean:
      return a.sum * b.n == b.sum * a.n;
    case AggregatorKind::kMax:
      return a.max == b.max;
    case AggregatorKind::kMin:
      return a.min == b.min;
    case AggregatorKind::kSum:
      return a.sum == b.sum;
    case AggregatorKind::kStd:
    case AggregatorKind::kVar: {
      const long long na = a.n * a.sum_sq - a.sum * a.sum;
      const long long nb = b.n * b.sum_sq - b.sum * b.sum;
      return na * b.n * b.n == nb * a.n * a.n;
    }
  }
  return false;
}

std::vector<Multiset> enumerate_multisets(int max_size, int lo, int hi) {
  std::vector<Multiset> out;
  Multiset cur;
  std::function<void(int, int)> rec = [&](int remaining, int start) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= hi; ++v) {
      cur.push_back(v);
      rec(remaining - 1, v);
      cur.pop_back();
    }
  };
  for (int size = 1; size <= max_size; ++size) rec(size, lo);
  return out;
}

double ana_value(const Multiset& m, double beta) {
  double mx = -INFINITY;
  for (int v : m) mx = std::max(mx, beta * v);
  double s = 0.0;
  for (int v : m) s += std::exp(beta * v - mx);
  return (mx + std::log(s) - std::log(static_cast<double>(m.size()))) / beta;
}

double ana_min_value(const Multiset& m, double beta) {
  Multiset neg(m.rbegin(), m.rend());
  for (int& v : neg) v = -v;
  return -ana_value(neg, beta);
}

double ana_var_value(const Multiset& m, double beta) {
  Multiset sq(m);
  for (int& v : sq) v *= v;
  const double first = ana_value(m, beta);
  return ana_value(sq, beta) - first * first;
}

std::vector<double> default_beta_grid() {
  std::vector<double> grid(41);
  for (int i = 0; i <= 40; ++i) grid[i] = 0.1 * std::pow(100.0, i / 40.0);
  return grid;
}

AnaSeparation ana_separates(const Multiset& a, const Multiset& b,
                            const std::vector<double>& beta_grid) {
  AnaSeparation r;
  r.witness_beta = first_witness(ana_profile(a, beta_grid), ana_profile(b, beta_grid), beta_grid);
  r.separates = r.witness_beta.has_value();
  return r;
}

CollisionRow compare_pair(const Multiset& a, const Multiset& b,
                          const std::vector<double>& beta_grid) {
  CollisionRow row;
  row.a = a;
  row.b = b;
  fill_verdicts(row, multiset_stats(a), multiset_stats(b));
  row.ana_witness_beta = ana_separates(a, b, beta_grid).witness_beta;
  return row;
}

CollisionReport enumerate_collisions(int max_size, int lo, int hi) {
  if (max_size < 1 || max_size > 6) {
    throw std::invalid_argument("enumerate_collisions: max_size must be in [1, 6], got " +
                                std::to_string(max_size));
  }
  if (hi < lo || hi - lo + 1 > 9) {
    throw std::invalid_argument("enumerate_collisions: value range must hold 1..9 values, got " +
                                std::to_string(lo) + ":" + std::to_string(hi));
  }
  CollisionReport report{max_size, lo, hi, {}};
  const auto sets = enumerate_multisets(max_size, lo, hi);
  const auto grid = default_beta_grid();
  std::vector<MultisetStats> stats;
  stats.reserve(sets.size());
  for (const Multiset& m : sets) stats.push_back(multiset_stats(m));
  std::vector<std::vector<double>> profiles(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      bool any = false;
      for (AggregatorKind k : kFullPool) any = any || aggregator_equal(k, stats[i], stats[j]);
      if (!any) continue;
      CollisionRow row;
      row.a = sets[i];
      row.b = sets[j];
      fill_verdicts(row, stats[i], stats[j]);
      if (profiles[i].empty()) profiles[i] = ana_profile(sets[i], grid);
      if (profiles[j].empty()) profiles[j] = ana_profile(sets[j], grid);
      row.ana_witness_beta = first_witness(profiles[i], profiles[j], grid);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string format_multiset(const Multiset& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(m[i]);
  }
  return s;
}

std::string format_report_csv(const CollisionReport& report) {
  std::string out =
      "size_a,multiset_a,size_b,multiset_b,mean,max,min,sum,std,var,mixed_sum,mixed_concat,"
      "ana_witness_beta\n";
  auto verdict = [](bool eq) { return eq ? "equal" : "distinct"; };
  for (const CollisionRow& r : report.rows) {
    out += std::to_string(r.a.size()) + ',' + format_multiset(r.a) + ',' +
           std::to_string(r.b.size()) + ',' + format_multiset(r.b);
    for (bool eq : r.equal) {
      out += ',';
      out += verdict(eq);
    }
    out += ',';
    out += verdict(r.mixed_sum_equal);
    out += ',';
    out += verdict(r.mixed_concat_equal);
    out += ',';
    out += r.ana_witness_beta ? format_double(*r.ana_witness_beta) : std::string("none");
    out += '\n';
  }
  return out;
}

}  // namespace bingnn
