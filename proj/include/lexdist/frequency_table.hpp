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

#ifndef LEXDIST_FREQUENCY_TABLE_HPP
#define LEXDIST_FREQUENCY_TABLE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace lexdist {

using Count = std::uint64_t;
using Period = std::int64_t;

struct TableEntry {
  std::string token;
  Count count = 0;
  std::optional<std::string> group;
  std::optional<Period> period;

  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

/// Token counts with optional group and period tags. Entries are kept in
/// canonical (token, group, period) order with no repeated triple; repeated
/// triples passed at construction are summed and counted in
/// duplicates_merged().
class FrequencyTable {
 public:
  FrequencyTable() = default;

  explicit FrequencyTable(std::vector<TableEntry> entries) {
    std::sort(entries.begin(), entries.end(), key_less);
    for (auto& e : entries) {
      if (!entries_.empty() && same_key(entries_.back(), e)) {
        entries_.back().count += e.count;
        ++duplicates_merged_;
      } else {
        entries_.push_back(std::move(e));
      }
    }
  }

  /// Untagged table from (token, count) pairs.
  static FrequencyTable from_counts(
      const std::vector<std::pair<std::string, Count>>& counts) {
    std::vector<TableEntry> entries;
    entries.reserve(counts.size());
    for (const auto& [token, count] : counts) {
      entries.push_back({token, count, std::nullopt, std::nullopt});
    }
    return FrequencyTable(std::move(entries));
  }

  const std::vector<TableEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t duplicates_merged() const noexcept { return duplicates_merged_; }

  Count total() const noexcept {
    Count sum = 0;
    for (const auto& e : entries_) sum += e.count;
    return sum;
  }

  bool has_groups() const noexcept {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const TableEntry& e) { return e.group.has_value(); });
  }

  bool has_periods() const noexcept {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const TableEntry& e) { return e.period.has_value(); });
  }

  /// Count for a token summed over all groups and periods.
  Count count_of(const std::string& token) const {
    Count sum = 0;
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), token,
        [](const TableEntry& e, const std::string& t) { return e.token < t; });
    for (; it != entries_.end() && it->token == token; ++it) sum += it->count;
    return sum;
  }

  friend bool operator==(const FrequencyTable& a, const FrequencyTable& b) {
    return a.entries_ == b.entries_;
  }

 private:
  static bool key_less(const TableEntry& a, const TableEntry& b) {
    return std::tie(a.token, a.group, a.period) <
           std::tie(b.token, b.group, b.period);
  }
  static bool same_key(const TableEntry& a, const TableEntry& b) {
    return a.token == b.token && a.group == b.group && a.period == b.period;
  }

  std::vector<TableEntry> entries_;
  std::size_t duplicates_merged_ = 0;
};

}  // namespace lexdist

#endif  // LEXDIST_FREQUENCY_TABLE_HPP
