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

#ifndef LEXDIST_GENERATORS_HPP
#define LEXDIST_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lexdist/distribution.hpp"
#include "lexdist/error.hpp"
#include "lexdist/frequency_table.hpp"
#include "lexdist/random.hpp"

namespace lexdist {

// ---------------------------------------------------------------------------
// Idealized geometric construction
// ---------------------------------------------------------------------------

struct IdealizedGeometricSpec {
  std::size_t n_tokens = 0;
  std::size_t top_k = 0;
  double top_mass = 0.0;
};

struct BisectionOptions {
  double tolerance = 1e-9;
  int max_iterations = 200;
};

struct IdealizedGeometric {
  double ratio = 0.0;
  ProbabilityVector distribution;
  /// Σ_{k<=top_k} p_k - top_mass, measured on the returned vector.
  double residual = 0.0;
  int iterations = 0;
};

/// Share of the first k of n ranks under masses proportional to r^(rank-1).
/// Strictly decreasing in r on (0, 1), from 1 down to k/n.
inline double geometric_head_mass(double ratio, std::size_t k, std::size_t n) {
  const double log_r = std::log(ratio);
  return std::expm1(static_cast<double>(k) * log_r) /
         std::expm1(static_cast<double>(n) * log_r);
}

inline std::vector<double> geometric_weights(double ratio, std::size_t n) {
  std::vector<double> w(n);
  double v = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = v;
    v *= ratio;
  }
  return w;
}

/// Finds the ratio r in (0, 1) such that the top_k most probable of n_tokens
/// geometrically decaying tokens carry exactly top_mass of the probability.
inline IdealizedGeometric solve_idealized_geometric(const IdealizedGeometricSpec& target,
                                                    const BisectionOptions& options = {}) {
  const auto n = target.n_tokens;
  const auto k = target.top_k;
  if (n == 0 || k == 0 || k > n) {
    throw Error(ErrorCode::Unsatisfiable, "need 1 <= top_k <= n_tokens");
  }
  if (!(target.top_mass > 0.0 && target.top_mass < 1.0)) {
    throw Error(ErrorCode::Unsatisfiable, "top_mass must lie in (0, 1)");
  }
  // A uniform distribution already gives the head k/n; decay only raises it.
  if (target.top_mass <= static_cast<double>(k) / static_cast<double>(n)) {
    throw Error(ErrorCode::Unsatisfiable,
                "top_mass must exceed top_k/n_tokens = " +
                    std::to_string(static_cast<double>(k) / static_cast<double>(n)));
  }

  double lo = 0.0, hi = 1.0;
  double mid = 0.5;
  int iter = 0;
  bool converged = false;
  while (iter < options.max_iterations) {
    ++iter;
    mid = 0.5 * (lo + hi);
    const double head = geometric_head_mass(mid, k, n);
    if (std::abs(head - target.top_mass) < options.tolerance) {
      converged = true;
      break;
    }
    if (head > target.top_mass) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "bisection did not reach tolerance in " +
                    std::to_string(options.max_iterations) + " iterations");
  }
  auto dist = ProbabilityVector::from_weights(geometric_weights(mid, n));
  double head = 0.0;
  for (std::size_t i = 0; i < k; ++i) head += dist[i];
  return {mid, std::move(dist), head - target.top_mass, iter};
}

// ---------------------------------------------------------------------------
// Seeded samplers
// ---------------------------------------------------------------------------

namespace detail {

/// Inverse-CDF lookup over unnormalized weights; one uniform per draw.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::vector<double>& weights) : cumulative_(weights.size()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      sum += weights[i];
      cumulative_[i] = sum;
    }
  }

  std::size_t operator()(Rng& rng) const {
    const double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

inline void check_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ratio must lie in (0, 1)");
  }
}

inline FrequencyTable table_from_counts(const std::vector<Count>& counts,
                                        const std::vector<std::string>& names) {
  std::vector<TableEntry> entries;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) entries.push_back({names[i], counts[i], std::nullopt, std::nullopt});
  }
  return FrequencyTable(std::move(entries));
}

}  // namespace detail

/// n_draws independent draws over tokens t1..t<n_types> with
/// P(t_k) proportional to ratio^(k-1). Only drawn tokens appear in the table.
inline FrequencyTable sample_geometric(double ratio, std::size_t n_types,
                                       std::size_t n_draws, std::uint64_t seed) {
  detail::check_ratio(ratio);
  if (n_types == 0) throw Error(ErrorCode::InvalidArgument, "n_types must be >= 1");
  if (n_draws == 0) throw Error(ErrorCode::InvalidArgument, "n_draws must be >= 1");
  Rng rng(seed);
  const detail::DiscreteSampler pick(geometric_weights(ratio, n_types));
  std::vector<Count> counts(n_types, 0);
  for (std::size_t i = 0; i < n_draws; ++i) ++counts[pick(rng)];
  std::vector<std::string> names;
  names.reserve(n_types);
  for (std::size_t k = 1; k <= n_types; ++k) names.push_back("t" + std::to_string(k));
  return detail::table_from_counts(counts, names);
}

struct MixtureComponent {
  double ratio = 0.5;
  double weight = 1.0;
};

/// How component tokens are named. `disjoint` gives every component its own
/// vocabulary (c<j>_t<k>); `shared` maps rank k of every component onto the
/// same token t<k>, so the pooled table is a draw from the mixed pmf.
enum class TokenNamespace { disjoint, shared };

/// Each draw picks a component by weight, then a token from that component's
/// truncated geometric. With a single component no selection draw is made
/// and the result equals sample_geometric for the same seed.
inline FrequencyTable sample_mixture(const std::vector<MixtureComponent>& components,
                                     std::size_t n_types_per_component,
                                     std::size_t n_draws, std::uint64_t seed,
                                     TokenNamespace names_policy = TokenNamespace::disjoint) {
  if (components.empty()) {
    throw Error(ErrorCode::InvalidArgument, "mixture needs at least one component");
  }
  if (n_types_per_component == 0 || n_draws == 0) {
    throw Error(ErrorCode::InvalidArgument, "n_types and n_draws must be >= 1");
  }
  std::vector<double> weights;
  std::vector<detail::DiscreteSampler> samplers;
  for (const auto& c : components) {
    detail::check_ratio(c.ratio);
    if (!(c.weight > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "component weights must be positive");
    }
    weights.push_back(c.weight);
    samplers.emplace_back(geometric_weights(c.ratio, n_types_per_component));
  }
  const bool single = components.size() == 1;
  const bool shared = single || names_policy == TokenNamespace::shared;
  const std::size_t slots = shared ? n_types_per_component
                                   : n_types_per_component * components.size();

  Rng rng(seed);
  const detail::DiscreteSampler choose(weights);
  std::vector<Count> counts(slots, 0);
  for (std::size_t i = 0; i < n_draws; ++i) {
    const std::size_t c = single ? 0 : choose(rng);
    const std::size_t k = samplers[c](rng);
    ++counts[shared ? k : c * n_types_per_component + k];
  }

  std::vector<std::string> names;
  names.reserve(slots);
  if (shared) {
    for (std::size_t k = 1; k <= n_types_per_component; ++k) {
      names.push_back("t" + std::to_string(k));
    }
  } else {
    for (std::size_t c = 1; c <= components.size(); ++c) {
      for (std::size_t k = 1; k <= n_types_per_component; ++k) {
        names.push_back("c" + std::to_string(c) + "_t" + std::to_string(k));
      }
    }
  }
  return detail::table_from_counts(counts, names);
}

// ---------------------------------------------------------------------------
// Memorylessness
// ---------------------------------------------------------------------------

struct MemorylessnessRow {
  std::size_t m = 0;
  std::size_t n = 0;
  double observed = 0.0;  // T(m+n) / T(m)
  double expected = 0.0;  // T(n)
};

struct MemorylessnessReport {
  std::vector<MemorylessnessRow> ratio_table;
  double max_abs_deviation = 0.0;
  std::size_t max_lag = 0;
};

/// Compares T(m+n)/T(m) with T(n) for 1 <= m, n <= max_lag, where T(k) is the
/// probability mass beyond rank k. Zero deviation characterizes the geometric.
inline MemorylessnessReport memorylessness_diagnostic(const ProbabilityVector& p,
                                                      std::size_t max_lag) {
  const std::size_t n_types = p.size();
  if (max_lag < 1) throw Error(ErrorCode::InvalidArgument, "max_lag must be >= 1");
  if (n_types < max_lag + 2) {
    throw Error(ErrorCode::InsufficientSupport,
                std::to_string(n_types) + " types cannot support max_lag=" +
                    std::to_string(max_lag));
  }
  // Suffix sums keep small tails accurate.
  std::vector<double> tail(n_types + 1, 0.0);
  for (std::size_t k = n_types; k-- > 0;) tail[k] = tail[k + 1] + p[k];
  // tail[k] is the mass of ranks k+1..n, i.e. T(k); T(0) is 1 by definition.
  tail[0] = 1.0;

  MemorylessnessReport report;
  report.max_lag = max_lag;
  for (std::size_t m = 1; m <= max_lag; ++m) {
    for (std::size_t n = 1; n <= max_lag; ++n) {
      if (m + n >= n_types) continue;
      if (!(tail[m] > 0.0) || !(tail[n] > 0.0) || !(tail[m + n] > 0.0)) {
        throw Error(ErrorCode::InsufficientSupport, "zero tail mass within max_lag");
      }
      MemorylessnessRow row{m, n, tail[m + n] / tail[m], tail[n]};
      report.max_abs_deviation =
          std::max(report.max_abs_deviation, std::abs(row.observed - row.expected));
      report.ratio_table.push_back(row);
    }
  }
  return report;
}

}  // namespace lexdist

#endif  // LEXDIST_GENERATORS_HPP
