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

#ifndef LEXDIST_CORPUS_HPP
#define LEXDIST_CORPUS_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexdist/distribution.hpp"
#include "lexdist/error.hpp"
#include "lexdist/frequency_table.hpp"

namespace lexdist {

enum class TableFormat { csv, tsv };

inline TableFormat format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".tsv" || ext == ".tab" ? TableFormat::tsv : TableFormat::csv;
}

struct RowProblem {
  std::size_t line = 0;
  std::string reason;
};

struct LoadResult {
  FrequencyTable table;
  std::size_t rows_read = 0;
  std::size_t duplicates_merged = 0;
  std::vector<RowProblem> malformed;
};

namespace detail {

// Splits one record. CSV honours double-quoted fields ("" escapes a quote);
// TSV fields are taken verbatim. Returns nullopt on an unterminated quote.
inline std::optional<std::vector<std::string>> split_record(std::string_view line,
                                                            TableFormat format) {
  std::vector<std::string> fields;
  if (format == TableFormat::tsv) {
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields.emplace_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    return fields;
  }
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty() && !field_was_quoted) {
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(field));
  return fields;
}

inline bool parse_count(std::string_view s, Count& out) {
  if (s.empty()) return false;
  if (!std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_period(std::string_view s, Period& out) {
  if (s.empty()) return false;
  const auto* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace detail

/// Reads a `token,count[,group,period]` table. Blank lines are skipped;
/// CRLF line endings and a UTF-8 byte-order mark are accepted. In strict
/// mode any malformed row raises MalformedRow; in lenient mode such rows are
/// skipped and listed in the result.
inline LoadResult parse_frequency_table(std::istream& in, TableFormat format,
                                        bool lenient = false,
                                        const std::string& source = "<stream>") {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  bool have_header = false;
  LoadResult result;
  std::vector<TableEntry> entries;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    auto fields = detail::split_record(line, format);
    if (!have_header) {
      static const std::vector<std::vector<std::string>> kHeaders = {
          {"token", "count"}, {"token", "count", "group"},
          {"token", "count", "group", "period"}};
      if (!fields || std::find(kHeaders.begin(), kHeaders.end(), *fields) == kHeaders.end()) {
        throw Error(ErrorCode::MissingHeader,
                    "expected header token,count[,group,period]", source);
      }
      header = *fields;
      have_header = true;
      continue;
    }

    ++result.rows_read;
    auto reject = [&](std::string reason) {
      if (!lenient) {
        throw Error(ErrorCode::MalformedRow, reason,
                    source + ":" + std::to_string(line_no));
      }
      result.malformed.push_back({line_no, std::move(reason)});
    };
    if (!fields) {
      reject("unterminated quote");
      continue;
    }
    if (fields->size() != header.size()) {
      reject("expected " + std::to_string(header.size()) + " fields, got " +
             std::to_string(fields->size()));
      continue;
    }
    TableEntry entry;
    entry.token = (*fields)[0];
    if (entry.token.empty()) {
      reject("empty token");
      continue;
    }
    if (!detail::parse_count((*fields)[1], entry.count)) {
      reject("count '" + (*fields)[1] + "' is not a non-negative integer");
      continue;
    }
    if (header.size() >= 3 && !(*fields)[2].empty()) entry.group = (*fields)[2];
    if (header.size() == 4 && !(*fields)[3].empty()) {
      Period p = 0;
      if (!detail::parse_period((*fields)[3], p)) {
        reject("period '" + (*fields)[3] + "' is not an integer");
        continue;
      }
      entry.period = p;
    }
    entries.push_back(std::move(entry));
  }
  if (!have_header) throw Error(ErrorCode::EmptyFile, "no content", source);

  result.table = FrequencyTable(std::move(entries));
  result.duplicates_merged = result.table.duplicates_merged();
  return result;
}

inline LoadResult load_frequency_table(const std::filesystem::path& path,
                                       std::optional<TableFormat> format = std::nullopt,
                                       bool lenient = false) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open file", path.string());
  return parse_frequency_table(in, format.value_or(format_from_path(path)), lenient,
                               path.string());
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos && !s.starts_with('"')) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

/// Canonical serialization: entries in table order, header widened only as
/// far as the tags present require.
inline void write_frequency_table(std::ostream& out, const FrequencyTable& table,
                                  TableFormat format = TableFormat::csv) {
  const bool periods = table.has_periods();
  const bool groups = periods || table.has_groups();
  const char sep = format == TableFormat::csv ? ',' : '\t';
  auto field = [&](const std::string& s) {
    if (format == TableFormat::tsv) {
      if (s.find_first_of("\t\r\n") != std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "field contains a tab or newline: " + s);
      }
      return s;
    }
    return detail::csv_field(s);
  };
  out << "token" << sep << "count";
  if (groups) out << sep << "group";
  if (periods) out << sep << "period";
  out << '\n';
  for (const auto& e : table.entries()) {
    out << field(e.token) << sep << e.count;
    if (groups) out << sep << field(e.group.value_or(""));
    if (periods) {
      out << sep;
      if (e.period) out << *e.period;
    }
    out << '\n';
  }
}

inline std::string to_csv(const FrequencyTable& table) {
  std::ostringstream out;
  write_frequency_table(out, table);
  return out.str();
}

// ---------------------------------------------------------------------------
// Word lists and category extraction
// ---------------------------------------------------------------------------

enum class CasePolicy { fold, exact };

class WordList {
 public:
  WordList(std::string name, const std::vector<std::string>& tokens,
           CasePolicy policy = CasePolicy::fold)
      : name_(std::move(name)), policy_(policy) {
    std::set<std::string> seen;
    for (const auto& t : tokens) {
      auto key = apply(t);
      if (key.empty()) continue;
      if (seen.insert(key).second) tokens_.push_back(std::move(key));
    }
    if (tokens_.empty()) throw Error(ErrorCode::InvalidArgument, "word list is empty");
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  CasePolicy case_policy() const noexcept { return policy_; }
  std::size_t size() const noexcept { return tokens_.size(); }

  std::string apply(std::string_view token) const {
    return policy_ == CasePolicy::fold ? detail::ascii_lower(token) : std::string(token);
  }

 private:
  std::string name_;
  std::vector<std::string> tokens_;
  CasePolicy policy_;
};

/// One member per line; blank lines and '#' comments are ignored. The list
/// is named after the file stem.
inline WordList load_word_list(const std::filesystem::path& path,
                               CasePolicy policy = CasePolicy::fold) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open word list", path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t");
    tokens.push_back(line.substr(b, e - b + 1));
  }
  if (tokens.empty()) throw Error(ErrorCode::EmptyFile, "word list is empty", path.string());
  return WordList(path.stem().string(), tokens, policy);
}

struct ExtractionReport {
  std::size_t matched = 0;
  std::vector<std::string> missing;
  std::vector<std::string> excluded_low_frequency;
};

struct CategoryExtraction {
  RankedDistribution ranked;
  ExtractionReport report;
};

/// Ranks the word-list members found in the table. A member is matched when
/// any table entry carries it (under the list's case policy), even with count
/// zero; matched members below min_count are reported as excluded.
inline CategoryExtraction extract_category(const FrequencyTable& table, const WordList& list,
                                           Count min_count = 1) {
  if (min_count < 1) throw Error(ErrorCode::InvalidArgument, "min_count must be >= 1");
  std::map<std::string, Count> wanted;
  for (const auto& t : list.tokens()) wanted.emplace(t, 0);
  std::set<std::string> present;
  for (const auto& e : table.entries()) {
    auto key = list.apply(e.token);
    auto it = wanted.find(key);
    if (it == wanted.end()) continue;
    it->second += e.count;
    present.insert(std::move(key));
  }

  ExtractionReport report;
  std::vector<std::pair<std::string, Count>> kept;
  Count source_total = 0;
  for (const auto& t : list.tokens()) {
    if (!present.contains(t)) {
      report.missing.push_back(t);
      continue;
    }
    ++report.matched;
    const Count c = wanted.at(t);
    source_total += c;
    if (c >= min_count) {
      kept.emplace_back(t, c);
    } else {
      report.excluded_low_frequency.push_back(t);
    }
  }
  if (kept.empty()) {
    throw Error(ErrorCode::NoMatches,
                "no member of word list '" + list.name() + "' survives in the table");
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<RankedItem> items;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    items.push_back({i + 1, kept[i].first, kept[i].second});
  }
  auto excluded = report.excluded_low_frequency;
  std::sort(excluded.begin(), excluded.end());
  return {RankedDistribution(std::move(items), min_count, source_total, std::move(excluded)),
          std::move(report)};
}

// ---------------------------------------------------------------------------
// Partitioning
// ---------------------------------------------------------------------------

enum class SplitKey { group, period };

inline constexpr std::string_view kUntaggedBucket = "untagged";

/// Partitions entries by group or period label. Entries without the tag go
/// to the "untagged" bucket. A table with no tagged entry at all is an
/// error unless allow_untagged_only is set.
inline std::map<std::string, FrequencyTable> split_by_group(const FrequencyTable& table,
                                                            SplitKey key,
                                                            bool allow_untagged_only = false) {
  std::map<std::string, std::vector<TableEntry>> buckets;
  bool any_tagged = false;
  for (const auto& e : table.entries()) {
    std::string label;
    if (key == SplitKey::group && e.group) {
      label = *e.group;
      any_tagged = true;
    } else if (key == SplitKey::period && e.period) {
      label = std::to_string(*e.period);
      any_tagged = true;
    } else {
      label = std::string(kUntaggedBucket);
    }
    buckets[label].push_back(e);
  }
  if (!any_tagged && !allow_untagged_only) {
    throw Error(ErrorCode::NoTaggedEntries,
                key == SplitKey::group ? "no entry carries a group" : "no entry carries a period");
  }
  std::map<std::string, FrequencyTable> out;
  for (auto& [label, entries] : buckets) out.emplace(label, FrequencyTable(std::move(entries)));
  return out;
}

/// Period-tagged entries grouped by period in ascending numeric order;
/// untagged entries are ignored.
inline std::vector<PeriodTable> split_by_period(const FrequencyTable& table) {
  std::map<Period, std::vector<TableEntry>> buckets;
  for (const auto& e : table.entries()) {
    if (e.period) buckets[*e.period].push_back(e);
  }
  if (buckets.empty()) throw Error(ErrorCode::NoTaggedEntries, "no entry carries a period");
  std::vector<PeriodTable> out;
  for (auto& [p, entries] : buckets) out.emplace_back(p, FrequencyTable(std::move(entries)));
  return out;
}

}  // namespace lexdist

#endif  // LEXDIST_CORPUS_HPP
