// Copyright 2026 The lexdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXDIST_DISTRIBUTION_HPP
#define LEXDIST_DISTRIBUTION_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lexdist/error.hpp"
#include "lexdist/frequency_table.hpp"

namespace lexdist {

struct RankedItem {
  std::size_t rank = 0;
  std::string token;
  Count count = 0;

  friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

/// Counts sorted descending (ties by ascending token) with ranks 1..n.
class RankedDistribution {
 public:
  RankedDistribution(std::vector<RankedItem> items, Count min_count,
                     Count source_total, std::vector<std::string> excluded = {})
      : items_(std::move(items)),
        min_count_(min_count),
        source_total_(source_total),
        excluded_(std::move(excluded)) {
    if (min_count_ < 1) {
      throw Error(ErrorCode::InvalidArgument, "min_count must be >= 1");
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
      const auto& item = items_[i];
      if (item.rank != i + 1) {
        throw Error(ErrorCode::InvalidArgument, "ranks must be 1..n");
      }
      if (item.count < min_count_) {
        throw Error(ErrorCode::InvalidArgument,
                    "count below min_count for token '" + item.token + "'");
      }
      if (i > 0 && item.count > items_[i - 1].count) {
        throw Error(ErrorCode::InvalidArgument,
                    "counts must be non-increasing in rank");
      }
    }
  }

  /// Builds a distribution from already-descending counts; tokens are named
  /// t1..tn. Mostly useful for synthetic inputs.
  static RankedDistribution from_counts(const std::vector<Count>& counts) {
    std::vector<RankedItem> items;
    items.reserve(counts.size());
    Count total = 0;
    Count floor = counts.empty() ? 1 : counts.front();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      items.push_back({i + 1, "t" + std::to_string(i + 1), counts[i]});
      total += counts[i];
      floor = std::min(floor, counts[i]);
    }
    return RankedDistribution(std::move(items), std::max<Count>(floor, 1),
                              total);
  }

  const std::vector<RankedItem>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  Count min_count() const noexcept { return min_count_; }
  Count source_total() const noexcept { return source_total_; }
  /// Tokens dropped by the threshold (zero counts included), ascending.
  const std::vector<std::string>& excluded() const noexcept { return excluded_; }

  Count total() const noexcept {
    Count sum = 0;
    for (const auto& item : items_) sum += item.count;
    return sum;
  }

  std::vector<Count> counts() const {
    std::vector<Count> out;
    out.reserve(items_.size());
    for (const auto& item : items_) out.push_back(item.count);
    return out;
  }

  /// Canonical `rank,token,count` CSV.
  void write_csv(std::ostream& out) const {
    out << "rank,token,count\n";
    for (const auto& item : items_) {
      out << item.rank << ',' << item.token << ',' << item.count << '\n';
    }
  }

 private:
  std::vector<RankedItem> items_;
  Count min_count_;
  Count source_total_;
  std::vector<std::string> excluded_;
};

struct PeriodRange {
  Period first;
  Period last;  // inclusive

  bool contains(Period p) const noexcept { return p >= first && p <= last; }
};

struct RankOptions {
  Count min_count = 1;
  std::optional<std::string> group;
  std::optional<PeriodRange> periods;
};

/// Aggregates counts per token over the entries that pass the group/period
/// filters, drops tokens below min_count, and ranks the rest.
inline RankedDistribution rank_distribution(const FrequencyTable& table,
                                            const RankOptions& options = {}) {
  if (options.min_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "min_count must be >= 1");
  }
  std::map<std::string, Count> per_token;
  Count source_total = 0;
  for (const auto& e : table.entries()) {
    if (options.group && e.group != options.group) continue;
    if (options.periods && (!e.period || !options.periods->contains(*e.period))) {
      continue;
    }
    per_token[e.token] += e.count;
    source_total += e.count;
  }

  std::vector<RankedItem> items;
  std::vector<std::string> excluded;
  for (const auto& [token, count] : per_token) {
    if (count >= options.min_count) {
      items.push_back({0, token, count});
    } else {
      excluded.push_back(token);
    }
  }
  if (items.empty()) {
    throw Error(ErrorCode::EmptyAfterFilter,
                "no token survives the filters and min_count=" +
                    std::to_string(options.min_count));
  }
  // per_token is token-ordered, so a stable sort on count keeps ties by token.
  std::stable_sort(items.begin(), items.end(),
                   [](const RankedItem& a, const RankedItem& b) {
                     return a.count > b.count;
                   });
  for (std::size_t i = 0; i < items.size(); ++i) items[i].rank = i + 1;
  return RankedDistribution(std::move(items), options.min_count, source_total,
                            std::move(excluded));
}

struct Mass {
  std::size_t rank = 0;
  std::string token;
  double probability = 0.0;
};

/// Normalized masses in rank order.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ProbabilityVector(std::vector<Mass> masses) : masses_(std::move(masses)) {
    if (masses_.empty()) {
      throw Error(ErrorCode::InvalidArgument, "probability vector is empty");
    }
    double sum = 0.0;
    for (const auto& m : masses_) {
      if (!(m.probability > 0.0 && m.probability <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "probability outside (0,1] at rank " + std::to_string(m.rank));
      }
      sum += m.probability;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw Error(ErrorCode::InvalidArgument, "probabilities do not sum to 1");
    }
  }

  /// Masses given directly, ranks 1..n, tokens t1..tn.
  static ProbabilityVector from_masses(const std::vector<double>& masses) {
    std::vector<Mass> out;
    out.reserve(masses.size());
    for (std::size_t i = 0; i < masses.size(); ++i) {
      out.push_back({i + 1, "t" + std::to_string(i + 1), masses[i]});
    }
    return ProbabilityVector(std::move(out));
  }

  /// Positive weights scaled to sum to one.
  static ProbabilityVector from_weights(const std::vector<double>& weights) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    std::vector<double> masses;
    masses.reserve(weights.size());
    for (double w : weights) masses.push_back(w / sum);
    return from_masses(masses);
  }

  const std::vector<Mass>& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i].probability; }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(masses_.size());
    for (const auto& m : masses_) out.push_back(m.probability);
    return out;
  }

 private:
  std::vector<Mass> masses_;
};

inline ProbabilityVector normalize(const RankedDistribution& ranked) {
  if (ranked.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize an empty distribution");
  }
  const double total = static_cast<double>(ranked.total());
  std::vector<Mass> masses;
  masses.reserve(ranked.size());
  for (const auto& item : ranked.items()) {
    masses.push_back({item.rank, item.token, static_cast<double>(item.count) / total});
  }
  return ProbabilityVector(std::move(masses));
}

/// Shannon entropy in bits.
inline double entropy_bits(const ProbabilityVector& p) {
  double h = 0.0;
  for (const auto& m : p.masses()) {
    if (m.probability < 1.0) h -= m.probability * std::log2(m.probability);
  }
  return h < 0.0 ? 0.0 : h;
}

inline double perplexity(double entropy_bits) {
  if (!(entropy_bits >= 0.0)) {
    throw Error(ErrorCode::NegativeEntropy,
                "entropy must be non-negative, got " + std::to_string(entropy_bits));
  }
  return std::exp2(entropy_bits);
}

struct EntropySummary {
  double entropy_bits = 0.0;
  double perplexity = 1.0;
  std::size_t n_types = 0;
};

inline EntropySummary summarize_entropy(const ProbabilityVector& p) {
  const double h = entropy_bits(p);
  return {h, perplexity(h), p.size()};
}

using PeriodTable = std::pair<Period, FrequencyTable>;

/// Running totals over periods in ascending order. Each output entry is keyed
/// by (token, group) and tagged with the cumulative period; deaths are not
/// modelled, so per-token counts never decrease.
inline std::vector<PeriodTable> accumulate_periods(std::vector<PeriodTable> tables) {
  if (tables.empty()) {
    throw Error(ErrorCode::InvalidArgument, "at least one period is required");
  }
  std::sort(tables.begin(), tables.end(),
            [](const PeriodTable& a, const PeriodTable& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < tables.size(); ++i) {
    if (tables[i].first == tables[i - 1].first) {
      throw Error(ErrorCode::DuplicatePeriod,
                  "period " + std::to_string(tables[i].first) + " appears twice");
    }
  }

  std::map<std::pair<std::string, std::optional<std::string>>, Count> running;
  std::vector<PeriodTable> out;
  out.reserve(tables.size());
  for (const auto& [period, table] : tables) {
    for (const auto& e : table.entries()) running[{e.token, e.group}] += e.count;
    std::vector<TableEntry> entries;
    entries.reserve(running.size());
    for (const auto& [key, count] : running) {
      entries.push_back({key.first, count, key.second, period});
    }
    out.emplace_back(period, FrequencyTable(std::move(entries)));
  }
  return out;
}

}  // namespace lexdist

#endif  // LEXDIST_DISTRIBUTION_HPP
