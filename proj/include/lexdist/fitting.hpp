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

#ifndef LEXDIST_FITTING_HPP
#define LEXDIST_FITTING_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lexdist/distribution.hpp"
#include "lexdist/error.hpp"
#include "lexdist/special_functions.hpp"

namespace lexdist {

enum class Model { geometric, power_law };

constexpr std::string_view to_string(Model m) noexcept {
  return m == Model::geometric ? "geometric" : "power_law";
}

enum class LogBase { two, e, ten };

inline double log_in(LogBase base, double v) {
  switch (base) {
    case LogBase::two: return std::log2(v);
    case LogBase::e: return std::log(v);
    case LogBase::ten: return std::log10(v);
  }
  return std::log2(v);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

/// Ordinary least squares of ys on xs. R² = 1 - SS_res/SS_tot, clamped to
/// [0, 1] against rounding.
inline LinearFit ordinary_least_squares(std::span<const double> xs,
                                        std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size()) {
    throw Error(ErrorCode::InvalidArgument, "regression inputs differ in length");
  }
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "need at least 2 points");
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorCode::ZeroVariance, "regressor is constant");
  if (syy == 0.0) throw Error(ErrorCode::ZeroVariance, "response is constant");

  LinearFit fit;
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

struct FitResult {
  Model model = Model::geometric;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
  LogBase log_base = LogBase::two;

  /// Rank-frequency data should decay; a rising fit is reported as-is.
  bool anomalous_slope() const noexcept { return slope > 0.0; }

  /// Fitted log count at `rank`, in the fit's log base.
  double predict_log_count(double rank) const {
    const double x = model == Model::geometric ? rank : log_in(log_base, rank);
    return intercept + slope * x;
  }
};

namespace detail {

inline FitResult fit_rank_model(const RankedDistribution& ranked, Model model,
                                LogBase base) {
  if (ranked.size() < 3) {
    throw Error(ErrorCode::TooFewPoints,
                "need at least 3 ranks, got " + std::to_string(ranked.size()));
  }
  const auto& items = ranked.items();
  if (items.front().count == items.back().count) {
    throw Error(ErrorCode::ZeroVariance, "all counts are equal");
  }
  std::vector<double> xs, ys;
  xs.reserve(items.size());
  ys.reserve(items.size());
  for (const auto& item : items) {
    const double rank = static_cast<double>(item.rank);
    xs.push_back(model == Model::geometric ? rank : log_in(base, rank));
    ys.push_back(log_in(base, static_cast<double>(item.count)));
  }
  const LinearFit lf = ordinary_least_squares(xs, ys);
  return {model, lf.slope, lf.intercept, lf.r_squared, lf.n_points, base};
}

}  // namespace detail

/// Log count against rank; a straight line means geometric decay and the
/// slope is the log of the rank-to-rank ratio.
inline FitResult fit_geometric(const RankedDistribution& ranked,
                               LogBase base = LogBase::two) {
  return detail::fit_rank_model(ranked, Model::geometric, base);
}

/// Log count against log rank; a straight line means a power law.
inline FitResult fit_power_law(const RankedDistribution& ranked,
                               LogBase base = LogBase::two) {
  return detail::fit_rank_model(ranked, Model::power_law, base);
}

struct PairedTest {
  double t_statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double mean_difference = 0.0;
  double p_value = 1.0;
  /// Set when every difference is identical; t is then 0 (mean 0) or ±inf.
  bool zero_variance = false;
};

/// Two-sided paired t-test on d = A - B.
inline PairedTest compare_fits_paired(std::span<const std::pair<double, double>> pairs) {
  const std::size_t n = pairs.size();
  if (n < 2) {
    throw Error(ErrorCode::TooFewPairs, "need at least 2 pairs, got " + std::to_string(n));
  }
  std::vector<double> d;
  d.reserve(n);
  double mean = 0.0;
  for (const auto& [a, b] : pairs) {
    d.push_back(a - b);
    mean += a - b;
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);

  PairedTest out;
  out.degrees_of_freedom = n - 1;
  out.mean_difference = mean;
  if (ss == 0.0) {
    out.zero_variance = true;
    if (mean == 0.0) {
      out.t_statistic = 0.0;
      out.p_value = 1.0;
    } else {
      out.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), mean);
      out.p_value = 0.0;
    }
    return out;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  out.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
  out.p_value = special::student_t_two_sided_p(out.t_statistic,
                                               static_cast<double>(n - 1));
  return out;
}

enum class CompareSpace { probability, log_probability };

constexpr std::string_view to_string(CompareSpace s) noexcept {
  return s == CompareSpace::probability ? "probability" : "log_probability";
}

struct PointwiseComparison {
  double r_squared = 0.0;
  std::size_t n_ranks_compared = 0;
  CompareSpace space = CompareSpace::probability;
};

/// Squared Pearson correlation between the two rank profiles over ranks
/// 1..top_n. Pairing is by rank, never by token.
inline PointwiseComparison pointwise_compare(const ProbabilityVector& a,
                                             const ProbabilityVector& b,
                                             std::size_t top_n, CompareSpace space) {
  if (top_n < 3) throw Error(ErrorCode::TooFewRanks, "top_n must be >= 3");
  if (a.size() < top_n || b.size() < top_n) {
    throw Error(ErrorCode::TooFewRanks,
                "top_n=" + std::to_string(top_n) + " exceeds distribution sizes (" +
                    std::to_string(a.size()) + ", " + std::to_string(b.size()) + ")");
  }
  std::vector<double> xs, ys;
  xs.reserve(top_n);
  ys.reserve(top_n);
  for (std::size_t k = 0; k < top_n; ++k) {
    const double pa = a[k];
    const double pb = b[k];
    xs.push_back(space == CompareSpace::probability ? pa : std::log(pa));
    ys.push_back(space == CompareSpace::probability ? pb : std::log(pb));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < top_n; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(top_n);
  my /= static_cast<double>(top_n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < top_n; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    syy += (ys[k] - my) * (ys[k] - my);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "a compared profile is constant");
  }
  const double r2 = (sxy * sxy) / (sxx * syy);
  return {std::clamp(r2, 0.0, 1.0), top_n, space};
}

}  // namespace lexdist

#endif  // LEXDIST_FITTING_HPP
