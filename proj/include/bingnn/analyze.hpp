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

// Brute-force distinguishability oracle over small integer multisets.

#ifndef BINGNN_ANALYZE_HPP_
#define BINGNN_ANALYZE_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bingnn/aggregators.hpp"

namespace bingnn {

/// Sorted ascending.
using Multiset = std::vector<int>;

/// Exact pool statistics of one multiset. mean and var are kept as integer
/// fractions: mean = sum / n, var = (n * sum_sq - sum^2) / n^2.
struct MultisetStats {
  long long n = 0;
  long long sum = 0;
  long long sum_sq = 0;
  int max = 0;
  int min = 0;

  double mean() const;
  double var() const;
  double stddev() const;
  double value(AggregatorKind kind) const;
};

MultisetStats multiset_stats(const Multiset& m);

/// Exact equality of one pool statistic across two multisets.
bool aggregator_equal(AggregatorKind kind, const MultisetStats& a, const MultisetStats& b);

struct CollisionRow {
  Multiset a;
  Multiset b;
  /// Indexed by AggregatorKind.
  std::array<bool, 6> equal{};
  bool mixed_sum_equal = false;
  bool mixed_concat_equal = false;
  /// First grid beta where ANA (or a hybrid term) tells a from b.
  std::optional<double> ana_witness_beta;

  bool full_pool_collision() const { return mixed_concat_equal && mixed_sum_equal; }
};

struct CollisionReport {
  int max_size = 0;
  int lo = 0;
  int hi = 0;
  std::vector<CollisionRow> rows;
};

/// Every multiset with sizes 1..max_size and values in [lo, hi], ordered by
/// size then lexicographically.
std::vector<Multiset> enumerate_multisets(int max_size, int lo, int hi);

/// Full verdict row for one pair.
CollisionRow compare_pair(const Multiset& a, const Multiset& b, const std::vector<double>& beta_grid);

/// All unordered pairs of distinct multisets on which at least one pool
/// aggregator collides, in canonical order. Throws std::invalid_argument
/// unless 1 <= max_size <= 6 and 1 <= hi - lo + 1 <= 9.
CollisionReport enumerate_collisions(int max_size, int lo, int hi);

/// 41 geometric steps from 0.1 to 10.
std::vector<double> default_beta_grid();

/// ANA, its min variant and its var variant on one multiset, evaluated in
/// double precision.
double ana_value(const Multiset& m, double beta);
double ana_min_value(const Multiset& m, double beta);
double ana_var_value(const Multiset& m, double beta);

struct AnaSeparation {
  bool separates = false;
  std::optional<double> witness_beta;
};

/// True iff some grid beta makes ANA, ANA-min or ANA-var differ by more than
/// 1e-6 between the two multisets.
AnaSeparation ana_separates(const Multiset& a, const Multiset& b,
                            const std::vector<double>& beta_grid);

/// "-1;1" style.
std::string format_multiset(const Multiset& m);
/// Header plus one row per pair; byte-identical for identical inputs.
std::string format_report_csv(const CollisionReport& report);

}  // namespace bingnn

#endif  // BINGNN_ANALYZE_HPP_
