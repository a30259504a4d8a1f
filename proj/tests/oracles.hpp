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

// Independent reference computations used by the tests. Nothing here calls
// into the library; each routine recomputes its quantity the long way.

#ifndef LEXDIST_TESTS_ORACLES_HPP
#define LEXDIST_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

/// Entropy of p_k = (1-q) q^(k-1), k >= 1, summed until the terms vanish.
inline double geometric_entropy_by_summation(double q) {
  double h = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double p = (1.0 - q) * std::pow(q, k - 1);
    if (p < 1e-300) break;
    h -= p * std::log2(p);
  }
  return h;
}

/// Tail mass beyond rank k for explicit masses, summed term by term.
inline double tail(const std::vector<double>& p, std::size_t k) {
  if (k == 0) return 1.0;
  double t = 0.0;
  for (std::size_t j = k; j < p.size(); ++j) t += p[j];
  return t;
}

inline double max_memoryless_deviation(const std::vector<double>& p, std::size_t max_lag) {
  double worst = 0.0;
  for (std::size_t m = 1; m <= max_lag; ++m) {
    for (std::size_t n = 1; n <= max_lag; ++n) {
      if (m + n >= p.size()) continue;
      worst = std::max(worst, std::abs(tail(p, m + n) / tail(p, m) - tail(p, n)));
    }
  }
  return worst;
}

/// Mass of the first k of n tokens with weights r^(i-1), by direct summation.
inline double head_mass(double r, std::size_t k, std::size_t n) {
  double head = 0.0, all = 0.0, w = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < k) head += w;
    all += w;
    w *= r;
  }
  return head / all;
}

/// Squared Pearson correlation through the textbook two-pass formula.
inline double pearson_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy * sxy / (sxx * syy);
}

/// A population series rising linearly with a top-3-share series falling
/// linearly against it, plus Gaussian noise. The planted coefficient of
/// determination is signal variance / (signal variance + sigma^2).
struct PlantedTrend {
  std::vector<double> population;
  std::vector<double> share;
  double planted_r2 = 0.0;
};

inline PlantedTrend planted_trend(std::size_t n, double target_r2, std::uint64_t seed) {
  PlantedTrend t;
  const double slope = -0.6 / static_cast<double>(n);
  double mean_i = (static_cast<double>(n) - 1.0) / 2.0, var_i = 0.0;
  for (std::size_t i = 0; i < n; ++i) var_i += (i - mean_i) * (i - mean_i);
  var_i /= static_cast<double>(n);
  const double signal = slope * slope * var_i;
  const double sigma = std::sqrt(signal * (1.0 - target_r2) / target_r2);
  t.planted_r2 = target_r2;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (std::size_t i = 0; i < n; ++i) {
    t.population.push_back(1000.0 + 50.0 * static_cast<double>(i));
    t.share.push_back(0.9 + slope * static_cast<double>(i) + noise(gen));
  }
  return t;
}

}  // namespace oracle

#endif  // LEXDIST_TESTS_ORACLES_HPP
