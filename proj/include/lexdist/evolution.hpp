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

#ifndef LEXDIST_EVOLUTION_HPP
#define LEXDIST_EVOLUTION_HPP

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexdist/error.hpp"
#include "lexdist/frequency_table.hpp"
#include "lexdist/generators.hpp"
#include "lexdist/random.hpp"

namespace lexdist {

struct PoolEntry {
  std::string token;
  double weight = 0.0;
};

/// Agent-level name-stock model: births innovate or copy, migrants arrive
/// from an external pool, existing persons die.
struct EvolutionConfig {
  std::uint64_t seed = 0;
  std::size_t generations = 1;
  std::size_t births_per_generation = 1;
  /// Optional per-generation births; the last entry repeats. Overrides
  /// births_per_generation when non-empty.
  std::vector<std::size_t> birth_schedule;
  double innovation_rate = 0.0;  // alpha
  double mortality_rate = 0.0;   // delta
  double migration_rate = 0.0;   // mu, per birth
  std::vector<PoolEntry> migrant_pool;
  std::size_t founders = 1;
  std::size_t founder_types = 1;

  std::size_t births_at(std::size_t generation) const {
    if (birth_schedule.empty()) return births_per_generation;
    const std::size_t i = std::min(generation - 1, birth_schedule.size() - 1);
    return birth_schedule[i];
  }

  void validate() const {
    auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (generations < 1) throw Error(ErrorCode::InvalidConfig, "generations must be >= 1");
    if (birth_schedule.empty() && births_per_generation < 1) {
      throw Error(ErrorCode::InvalidConfig, "births_per_generation must be >= 1");
    }
    if (!rate_ok(innovation_rate) || !rate_ok(mortality_rate) || !rate_ok(migration_rate)) {
      throw Error(ErrorCode::InvalidConfig, "rates must lie in [0, 1]");
    }
    if (founders < 1) throw Error(ErrorCode::InvalidConfig, "founders must be >= 1");
    if (founder_types < 1 || founder_types > founders) {
      throw Error(ErrorCode::InvalidConfig, "founder_types must lie in [1, founders]");
    }
    if (migration_rate > 0.0 && migrant_pool.empty()) {
      throw Error(ErrorCode::InvalidConfig, "migration_rate > 0 needs a migrant_pool");
    }
    for (const auto& e : migrant_pool) {
      if (!(e.weight > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "migrant_pool weights must be positive");
      }
    }
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::InvalidConfig,
                "bad value '" + std::string(text) + "' for key '" + std::string(key) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses the flat `key = value` config format. Blank lines and lines
/// starting with '#' are ignored. Lists are comma separated; migrant_pool
/// entries are `token:weight`.
inline EvolutionConfig parse_evolution_config(std::istream& in) {
  static const std::set<std::string, std::less<>> kKeys = {
      "seed",           "generations",     "births_per_generation",
      "birth_schedule", "innovation_rate", "mortality_rate",
      "migration_rate", "migrant_pool",    "founders",
      "founder_types"};
  EvolutionConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidConfig, "expected key = value",
                  "line " + std::to_string(line_no));
    }
    const std::string key(detail::trim(text.substr(0, eq)));
    const auto value = detail::trim(text.substr(eq + 1));
    if (!kKeys.contains(key)) {
      throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'",
                  "line " + std::to_string(line_no));
    }
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::InvalidConfig, "repeated key '" + key + "'",
                  "line " + std::to_string(line_no));
    }
    if (key == "seed") {
      cfg.seed = detail::parse_number<std::uint64_t>(value, key);
    } else if (key == "generations") {
      cfg.generations = detail::parse_number<std::size_t>(value, key);
    } else if (key == "births_per_generation") {
      cfg.births_per_generation = detail::parse_number<std::size_t>(value, key);
    } else if (key == "innovation_rate") {
      cfg.innovation_rate = detail::parse_number<double>(value, key);
    } else if (key == "mortality_rate") {
      cfg.mortality_rate = detail::parse_number<double>(value, key);
    } else if (key == "migration_rate") {
      cfg.migration_rate = detail::parse_number<double>(value, key);
    } else if (key == "founders") {
      cfg.founders = detail::parse_number<std::size_t>(value, key);
    } else if (key == "founder_types") {
      cfg.founder_types = detail::parse_number<std::size_t>(value, key);
    } else {
      std::stringstream items{std::string(value)};
      std::string item;
      while (std::getline(items, item, ',')) {
        const auto piece = detail::trim(item);
        if (piece.empty()) continue;
        if (key == "birth_schedule") {
          cfg.birth_schedule.push_back(detail::parse_number<std::size_t>(piece, key));
        } else {
          const auto colon = piece.rfind(':');
          if (colon == std::string_view::npos) {
            throw Error(ErrorCode::InvalidConfig, "migrant_pool entries are token:weight",
                        "line " + std::to_string(line_no));
          }
          cfg.migrant_pool.push_back(
              {std::string(detail::trim(piece.substr(0, colon))),
               detail::parse_number<double>(detail::trim(piece.substr(colon + 1)), key)});
        }
      }
    }
  }
  for (const char* required : {"seed", "generations"}) {
    if (!seen.contains(required)) {
      throw Error(ErrorCode::InvalidConfig, std::string("missing key '") + required + "'");
    }
  }
  if (!seen.contains("births_per_generation") && !seen.contains("birth_schedule")) {
    throw Error(ErrorCode::InvalidConfig,
                "one of births_per_generation or birth_schedule is required");
  }
  cfg.validate();
  return cfg;
}

/// Canonical text form; parse_evolution_config round-trips it.
inline std::string format_evolution_config(const EvolutionConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "seed = " << cfg.seed << '\n'
      << "generations = " << cfg.generations << '\n'
      << "births_per_generation = " << cfg.births_per_generation << '\n';
  if (!cfg.birth_schedule.empty()) {
    out << "birth_schedule = ";
    for (std::size_t i = 0; i < cfg.birth_schedule.size(); ++i) {
      out << (i ? "," : "") << cfg.birth_schedule[i];
    }
    out << '\n';
  }
  out << "innovation_rate = " << cfg.innovation_rate << '\n'
      << "mortality_rate = " << cfg.mortality_rate << '\n'
      << "migration_rate = " << cfg.migration_rate << '\n';
  if (!cfg.migrant_pool.empty()) {
    out << "migrant_pool = ";
    for (std::size_t i = 0; i < cfg.migrant_pool.size(); ++i) {
      out << (i ? "," : "") << cfg.migrant_pool[i].token << ':' << cfg.migrant_pool[i].weight;
    }
    out << '\n';
  }
  out << "founders = " << cfg.founders << '\n'
      << "founder_types = " << cfg.founder_types << '\n';
  return out.str();
}

struct GenerationSnapshot {
  std::size_t generation = 0;
  FrequencyTable table;
  std::size_t population = 0;
  std::size_t births = 0;
  std::size_t migrants = 0;
  std::size_t deaths = 0;
};

/// Runs the model for cfg.generations generations. Within a generation:
/// each birth innovates a fresh token with probability alpha, otherwise it
/// copies the token of a uniformly chosen person alive at the start of the
/// generation; then each birth slot admits a migrant with probability mu,
/// whose token is drawn from the pool; then each person alive at the start
/// of the generation dies with probability delta.
///
/// Founder tokens are f1..f<founder_types>; innovated tokens are n1, n2, ...
inline std::vector<GenerationSnapshot> simulate_name_evolution(const EvolutionConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  std::vector<std::string> names;
  std::unordered_map<std::string, std::uint32_t> index;
  auto intern = [&](const std::string& token) {
    auto [it, inserted] = index.try_emplace(token, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(token);
    return it->second;
  };

  std::vector<std::uint32_t> persons;
  persons.reserve(cfg.founders);
  std::vector<std::uint32_t> founder_ids;
  for (std::size_t t = 1; t <= cfg.founder_types; ++t) {
    founder_ids.push_back(intern("f" + std::to_string(t)));
  }
  for (std::size_t i = 0; i < cfg.founders; ++i) {
    persons.push_back(founder_ids[i % founder_ids.size()]);
  }

  std::vector<std::uint32_t> pool_ids;
  std::vector<double> pool_weights;
  for (const auto& e : cfg.migrant_pool) {
    pool_ids.push_back(intern(e.token));
    pool_weights.push_back(e.weight);
  }
  const detail::DiscreteSampler pool_pick(pool_weights.empty() ? std::vector<double>{1.0}
                                                               : pool_weights);

  std::size_t innovated = 0;
  std::vector<GenerationSnapshot> history;
  history.reserve(cfg.generations);
  std::vector<std::uint32_t> next;
  for (std::size_t g = 1; g <= cfg.generations; ++g) {
    const std::size_t alive = persons.size();
    if (alive == 0) {
      throw Error(ErrorCode::PopulationExtinct, "population reached zero",
                  "generation " + std::to_string(g));
    }
    const std::size_t births = cfg.births_at(g);

    std::vector<std::uint32_t> newcomers;
    newcomers.reserve(births);
    for (std::size_t b = 0; b < births; ++b) {
      if (rng.bernoulli(cfg.innovation_rate)) {
        // Fresh token; skip any name already in use (e.g. a pool token).
        std::string token;
        do {
          token = "n" + std::to_string(++innovated);
        } while (index.contains(token));
        newcomers.push_back(intern(token));
      } else {
        newcomers.push_back(persons[rng.below(alive)]);
      }
    }
    std::size_t migrants = 0;
    if (cfg.migration_rate > 0.0) {
      for (std::size_t b = 0; b < births; ++b) {
        if (rng.bernoulli(cfg.migration_rate)) {
          newcomers.push_back(pool_ids[pool_pick(rng)]);
          ++migrants;
        }
      }
    }
    next.clear();
    next.reserve(alive + newcomers.size());
    std::size_t deaths = 0;
    for (std::size_t i = 0; i < alive; ++i) {
      if (rng.bernoulli(cfg.mortality_rate)) {
        ++deaths;
      } else {
        next.push_back(persons[i]);
      }
    }
    next.insert(next.end(), newcomers.begin(), newcomers.end());
    persons.swap(next);

    std::vector<Count> counts(names.size(), 0);
    for (auto id : persons) ++counts[id];
    std::vector<TableEntry> entries;
    for (std::size_t id = 0; id < counts.size(); ++id) {
      if (counts[id] > 0) entries.push_back({names[id], counts[id], std::nullopt, std::nullopt});
    }
    history.push_back({g, FrequencyTable(std::move(entries)), persons.size(), births,
                       migrants, deaths});
  }
  return history;
}

}  // namespace lexdist

#endif  // LEXDIST_EVOLUTION_HPP
