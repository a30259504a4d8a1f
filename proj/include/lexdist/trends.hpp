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

#ifndef LEXDIST_TRENDS_HPP
#define LEXDIST_TRENDS_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexdist/corpus.hpp"
#include "lexdist/distribution.hpp"
#include "lexdist/error.hpp"
#include "lexdist/fitting.hpp"

namespace lexdist {

struct SeriesPoint {
  Period period = 0;
  double value = 0.0;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

class TimeSeries {
 public:
  TimeSeries(std::string label, std::vector<SeriesPoint> points)
      : label_(std::move(label)), points_(std::move(points)) {
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (points_[i].period == points_[i - 1].period) {
        throw Error(ErrorCode::DuplicatePeriod,
                    "period " + std::to_string(points_[i].period) + " repeats", label_);
      }
      if (points_[i].period < points_[i - 1].period) {
        throw Error(ErrorCode::InvalidArgument, "periods must be increasing", label_);
      }
    }
  }

  const std::string& label() const noexcept { return label_; }
  const std::vector<SeriesPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.value);
    return out;
  }

 private:
  std::string label_;
  std::vector<SeriesPoint> points_;
};

enum class Measure { entropy, perplexity, top_k_share, type_count };

constexpr std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::entropy: return "entropy";
    case Measure::perplexity: return "perplexity";
    case Measure::top_k_share: return "top_k_share";
    case Measure::type_count: return "type_count";
  }
  return "entropy";
}

struct MeasureOptions {
  Count min_count = 1;
  std::size_t top_k = 3;
  bool cumulative = false;
  std::optional<std::string> group;
};

inline double measure_table(const FrequencyTable& table, Measure measure,
                            const MeasureOptions& options) {
  const auto ranked = rank_distribution(table, {options.min_count, options.group, std::nullopt});
  switch (measure) {
    case Measure::type_count:
      return static_cast<double>(ranked.size());
    case Measure::top_k_share: {
      if (options.top_k < 1) throw Error(ErrorCode::InvalidArgument, "top_k must be >= 1");
      const auto p = normalize(ranked);
      const std::size_t k = std::min(options.top_k, p.size());
      if (k == p.size()) return 1.0;
      double share = 0.0;
      for (std::size_t i = 0; i < k; ++i) share += p[i];
      return share;
    }
    case Measure::entropy:
      return entropy_bits(normalize(ranked));
    case Measure::perplexity:
      return perplexity(entropy_bits(normalize(ranked)));
  }
  return 0.0;
}

/// One value per period, optionally over running (cumulative) tables.
inline TimeSeries measure_series(std::vector<PeriodTable> tables, Measure measure,
                                 const MeasureOptions& options = {}) {
  if (tables.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least 2 periods");
  }
  if (options.cumulative) {
    tables = accumulate_periods(std::move(tables));
  } else {
    std::sort(tables.begin(), tables.end(),
              [](const PeriodTable& a, const PeriodTable& b) { return a.first < b.first; });
  }
  std::vector<SeriesPoint> points;
  points.reserve(tables.size());
  for (const auto& [period, table] : tables) {
    try {
      points.push_back({period, measure_table(table, measure, options)});
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), "period " + std::to_string(period));
    }
  }
  std::string label(to_string(measure));
  if (options.cumulative) label = "cumulative_" + label;
  return TimeSeries(std::move(label), std::move(points));
}

enum class Transform { identity, log, scaled_log };

constexpr std::string_view to_string(Transform t) noexcept {
  switch (t) {
    case Transform::identity: return "identity";
    case Transform::log: return "log";
    case Transform::scaled_log: return "scaled_log";
  }
  return "identity";
}

struct TrendResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
  std::size_t dropped_periods = 0;
  Transform transform_a = Transform::identity;
  Transform transform_b = Transform::identity;
  std::vector<Period> periods;  // shared periods, ascending
};

/// Applies `t` to values. `log` is the natural log; `scaled_log` rescales the
/// natural log linearly onto [0, 1].
inline std::vector<double> apply_transform(const std::vector<double>& values, Transform t) {
  if (t == Transform::identity) return values;
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::NonPositiveValueUnderLog,
                  "value " + std::to_string(v) + " cannot be log-transformed");
    }
    out.push_back(std::log(v));
  }
  if (t == Transform::scaled_log) {
    const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
    const double min = *lo, span = *hi - *lo;
    if (span == 0.0) throw Error(ErrorCode::ZeroVariance, "scaled_log of a constant series");
    for (double& v : out) v = (v - min) / span;
  }
  return out;
}

/// OLS of transformed b on transformed a over the periods both series share.
inline TrendResult correlate_series(const TimeSeries& a, const TimeSeries& b,
                                    Transform transform_a = Transform::identity,
                                    Transform transform_b = Transform::identity) {
  std::map<Period, double> b_by_period;
  for (const auto& p : b.points()) b_by_period.emplace(p.period, p.value);
  std::vector<double> xs, ys;
  std::vector<Period> shared;
  for (const auto& p : a.points()) {
    auto it = b_by_period.find(p.period);
    if (it == b_by_period.end()) continue;
    shared.push_back(p.period);
    xs.push_back(p.value);
    ys.push_back(it->second);
  }
  if (shared.size() < 3) {
    throw Error(ErrorCode::TooFewSharedPeriods,
                std::to_string(shared.size()) + " shared periods; need at least 3",
                a.label() + " x " + b.label());
  }
  const auto fit = ordinary_least_squares(apply_transform(xs, transform_a),
                                          apply_transform(ys, transform_b));
  TrendResult r;
  r.slope = fit.slope;
  r.intercept = fit.intercept;
  r.r_squared = fit.r_squared;
  r.n_points = shared.size();
  r.dropped_periods = a.size() + b.size() - 2 * shared.size();
  r.transform_a = transform_a;
  r.transform_b = transform_b;
  r.periods = std::move(shared);
  return r;
}

/// Entropy of one target word's context-token counts, per period.
inline TimeSeries context_entropy_series(std::vector<PeriodTable> context_tables) {
  std::sort(context_tables.begin(), context_tables.end(),
            [](const PeriodTable& a, const PeriodTable& b) { return a.first < b.first; });
  std::vector<SeriesPoint> points;
  for (const auto& [period, table] : context_tables) {
    try {
      points.push_back({period, entropy_bits(normalize(rank_distribution(table)))});
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), "period " + std::to_string(period));
    }
  }
  return TimeSeries("context_entropy_bits", std::move(points));
}

/// Reads a `period,value` CSV.
inline TimeSeries load_covariate_series(const std::filesystem::path& path,
                                        std::string label = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open covariate file", path.string());
  if (label.empty()) label = path.stem().string();
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<SeriesPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = detail::split_record(line, TableFormat::csv);
    if (!have_header) {
      if (!fields || *fields != std::vector<std::string>{"period", "value"}) {
        throw Error(ErrorCode::MissingHeader, "expected header period,value", path.string());
      }
      have_header = true;
      continue;
    }
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (!fields || fields->size() != 2) {
      throw Error(ErrorCode::MalformedRow, "expected 2 fields", where);
    }
    SeriesPoint p;
    double v = 0.0;
    const auto& vs = (*fields)[1];
    auto [ptr, ec] = std::from_chars(vs.data(), vs.data() + vs.size(), v);
    if (!detail::parse_period((*fields)[0], p.period) || ec != std::errc() ||
        ptr != vs.data() + vs.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::MalformedRow, "bad period or value", where);
    }
    p.value = v;
    points.push_back(p);
  }
  if (!have_header) throw Error(ErrorCode::EmptyFile, "no content", path.string());
  std::sort(points.begin(), points.end(),
            [](const SeriesPoint& x, const SeriesPoint& y) { return x.period < y.period; });
  return TimeSeries(std::move(label), std::move(points));
}

}  // namespace lexdist

#endif  // LEXDIST_TRENDS_HPP
