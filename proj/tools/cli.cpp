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

#include "cli.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lexdist/lexdist.hpp"

namespace lexdist::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Serialization helpers
// ---------------------------------------------------------------------------

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string file_sha256(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open file", path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

std::string canonical_dump(const json& j) { return j.dump(); }

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

namespace {

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

class Report {
 public:
  Report(std::string command, std::string invocation) {
    body_["tool_version"] = kToolVersion;
    body_["command"] = std::move(command);
    body_["invocation"] = std::move(invocation);
    body_["input_digests"] = json::array();
    body_["results"] = json::object();
    body_["warnings"] = json::array();
  }

  void add_input(const fs::path& path) {
    body_["input_digests"].push_back({{"path", path.string()}, {"sha256", file_sha256(path)}});
  }
  void warn(std::string message) { body_["warnings"].push_back(std::move(message)); }
  json& results() { return body_["results"]; }
  void set_rng(std::uint64_t seed) {
    body_["rng_algorithm"] = Rng::kAlgorithm;
    body_["seed"] = seed;
  }

  std::string serialize() const {
    const std::string body = canonical_dump(body_);
    json envelope;
    envelope["body"] = body_;
    envelope["body_sha256"] = sha256_hex(body);
    envelope["generated_at"] = timestamp();
    return envelope.dump(2) + "\n";
  }

 private:
  // Honours SOURCE_DATE_EPOCH so whole reports can be made byte-stable.
  static std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
      t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  json body_;
};

json to_json(const FitResult& f) {
  return {{"model", to_string(f.model)},
          {"slope", number(f.slope)},
          {"intercept", number(f.intercept)},
          {"r_squared", number(f.r_squared)},
          {"n_points", f.n_points},
          {"log_base", 2},
          {"anomalous_slope", f.anomalous_slope()}};
}

json to_json(const PairedTest& t) {
  return {{"t_statistic", number(t.t_statistic)},
          {"degrees_of_freedom", t.degrees_of_freedom},
          {"mean_difference", number(t.mean_difference)},
          {"p_value", number(t.p_value)},
          {"zero_variance", t.zero_variance}};
}

json to_json(const EntropySummary& s) {
  return {{"entropy_bits", number(s.entropy_bits)},
          {"perplexity", number(s.perplexity)},
          {"n_types", s.n_types}};
}

json to_json(const RankedDistribution& r) {
  return {{"n_types", r.size()},
          {"min_count", r.min_count()},
          {"source_total", r.source_total()},
          {"total", r.total()},
          {"excluded_count", r.excluded().size()},
          {"top_token", r.items().front().token},
          {"top_count", r.items().front().count}};
}

json to_json(const ExtractionReport& e) {
  return {{"matched", e.matched},
          {"missing", e.missing},
          {"excluded_low_frequency", e.excluded_low_frequency}};
}

json to_json(const TimeSeries& s) {
  json points = json::array();
  for (const auto& p : s.points()) points.push_back({{"period", p.period}, {"value", number(p.value)}});
  return {{"label", s.label()}, {"points", points}};
}

json to_json(const MemorylessnessReport& m) {
  return {{"max_lag", m.max_lag},
          {"max_abs_deviation", number(m.max_abs_deviation)},
          {"n_comparisons", m.ratio_table.size()}};
}

json error_json(const Error& e) {
  return {{"code", to_string(e.code())}, {"message", e.detail()}, {"context", e.context()}};
}

// ---------------------------------------------------------------------------
// Shared option handling
// ---------------------------------------------------------------------------

struct GlobalOptions {
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  bool lenient = false;
  std::string out_dir;
};

struct Selection {
  Count min_count = 1;
  std::string group;
  std::string period;  // "Y" or "A:B"
  std::string word_list;
  std::string case_policy = "fold";
};

void add_selection(CLI::App* cmd, Selection& s) {
  cmd->add_option("--min-count", s.min_count, "Drop tokens with fewer occurrences")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--group", s.group, "Keep only entries with this group tag");
  cmd->add_option("--period", s.period, "Keep only entries in PERIOD or FIRST:LAST");
  cmd->add_option("--word-list", s.word_list, "Restrict to the members of a word list");
  cmd->add_option("--case", s.case_policy, "Word-list matching: fold or exact")
      ->check(CLI::IsMember({"fold", "exact"}));
}

std::optional<PeriodRange> parse_period_range(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto parse = [&](std::string_view s) {
    Period p = 0;
    if (!detail::parse_period(s, p)) {
      throw Error(ErrorCode::InvalidArgument, "bad period '" + std::string(s) + "'");
    }
    return p;
  };
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) {
    const Period p = parse(text);
    return PeriodRange{p, p};
  }
  return PeriodRange{parse(std::string_view(text).substr(0, colon)),
                     parse(std::string_view(text).substr(colon + 1))};
}

FrequencyTable filter_table(const FrequencyTable& table, const std::optional<std::string>& group,
                            const std::optional<PeriodRange>& periods) {
  if (!group && !periods) return table;
  std::vector<TableEntry> kept;
  for (const auto& e : table.entries()) {
    if (group && e.group != group) continue;
    if (periods && (!e.period || !periods->contains(*e.period))) continue;
    kept.push_back(e);
  }
  return FrequencyTable(std::move(kept));
}

LoadResult load_input(const std::string& path, const GlobalOptions& g, Report& report) {
  if (!fs::exists(path)) throw Error(ErrorCode::FileNotFound, "no such file", path);
  auto loaded = load_frequency_table(path, std::nullopt, g.lenient);
  report.add_input(path);
  if (loaded.duplicates_merged > 0) {
    report.warn(path + ": " + std::to_string(loaded.duplicates_merged) +
                " duplicate (token, group, period) rows summed");
  }
  for (const auto& m : loaded.malformed) {
    report.warn(path + ":" + std::to_string(m.line) + ": skipped malformed row (" + m.reason +
                ")");
  }
  return loaded;
}

/// Ranks a table under the selection flags, through the word list if one
/// was given.
RankedDistribution select_ranked(const FrequencyTable& table, const Selection& s,
                                 Report& report, json& section) {
  std::optional<std::string> group;
  if (!s.group.empty()) group = s.group;
  const auto periods = parse_period_range(s.period);
  if (!s.word_list.empty()) {
    const auto list = load_word_list(
        s.word_list, s.case_policy == "exact" ? CasePolicy::exact : CasePolicy::fold);
    report.add_input(s.word_list);
    auto extraction = extract_category(filter_table(table, group, periods), list, s.min_count);
    section["extraction"] = to_json(extraction.report);
    section["extraction"]["word_list"] = list.name();
    section["extraction"]["case_policy"] = s.case_policy;
    return std::move(extraction.ranked);
  }
  auto ranked = rank_distribution(table, {s.min_count, group, periods});
  std::vector<std::string> zero;
  for (const auto& token : ranked.excluded()) {
    if (table.count_of(token) == 0) zero.push_back(token);
  }
  if (!zero.empty()) section["dropped_zero_count"] = zero;
  return ranked;
}

json selection_json(const Selection& s) {
  json j = {{"min_count", s.min_count}};
  j["group"] = s.group.empty() ? json(nullptr) : json(s.group);
  j["period"] = s.period.empty() ? json(nullptr) : json(s.period);
  return j;
}

fs::path ensure_out_dir(const GlobalOptions& g) {
  fs::path dir(g.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::InvalidArgument, "cannot create output directory", g.out_dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write file", path.string());
  out << text;
}

void emit(const Report& report, const GlobalOptions& g, std::ostream& out) {
  const std::string text = report.serialize();
  if (!g.out_dir.empty()) write_text(ensure_out_dir(g) / "report.json", text);
  out << text;
}

void fit_section(const RankedDistribution& ranked, const std::string& model, json& section,
                 Report& report, std::optional<FitResult>& geo, std::optional<FitResult>& pl) {
  section["distribution"] = to_json(ranked);
  if (model == "geometric" || model == "both") geo = fit_geometric(ranked);
  if (model == "powerlaw" || model == "both") pl = fit_power_law(ranked);
  if (geo) {
    section["fits"]["geometric"] = to_json(*geo);
    if (geo->anomalous_slope()) report.warn("geometric fit has a positive slope");
  }
  if (pl) {
    section["fits"]["power_law"] = to_json(*pl);
    if (pl->anomalous_slope()) report.warn("power-law fit has a positive slope");
  }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path, const GlobalOptions& g, Report& report,
                 std::ostream& out) {
  const auto loaded = load_input(path, g, report);
  const auto& table = loaded.table;
  std::size_t zero = 0;
  std::set<std::string> groups;
  std::set<Period> periods;
  for (const auto& e : table.entries()) {
    if (e.count == 0) ++zero;
    if (e.group) groups.insert(*e.group);
    if (e.period) periods.insert(*e.period);
  }
  auto& r = report.results();
  r["rows_read"] = loaded.rows_read;
  r["entries"] = table.size();
  r["duplicates_merged"] = loaded.duplicates_merged;
  r["malformed_rows"] = loaded.malformed.size();
  r["total"] = table.total();
  r["zero_count_entries"] = zero;
  r["groups"] = groups;
  r["periods"] = periods;
  emit(report, g, out);
  return kOk;
}

int cmd_fit(const std::string& path, const Selection& sel, const std::string& model,
            const GlobalOptions& g, Report& report, std::ostream& out) {
  const auto loaded = load_input(path, g, report);
  auto& r = report.results();
  r["selection"] = selection_json(sel);
  const auto ranked = select_ranked(loaded.table, sel, report, r);
  std::optional<FitResult> geo, pl;
  fit_section(ranked, model, r, report, geo, pl);

  if (!g.out_dir.empty()) {
    std::ostringstream csv;
    csv << "rank,count,log10_rank,log10_count,fitted_log10_count_geometric,"
           "fitted_log10_count_powerlaw\n";
    const double to_log10 = std::log10(2.0);
    for (const auto& item : ranked.items()) {
      const double rank = static_cast<double>(item.rank);
      csv << item.rank << ',' << item.count << ',' << format_double(std::log10(rank)) << ','
          << format_double(std::log10(static_cast<double>(item.count))) << ',';
      if (geo) csv << format_double(geo->predict_log_count(rank) * to_log10);
      csv << ',';
      if (pl) csv << format_double(pl->predict_log_count(rank) * to_log10);
      csv << '\n';
    }
    write_text(ensure_out_dir(g) / "fit_plot.csv", csv.str());
  }
  emit(report, g, out);
  return kOk;
}

struct CompareOptions {
  std::vector<std::string> files;
  std::string group_a, group_b;
  std::size_t top_n = 50;
  std::string space = "probability";
  Selection sel;
};

int cmd_compare(const CompareOptions& o, const GlobalOptions& g, Report& report,
                std::ostream& out) {
  if (o.files.empty() || o.files.size() > 2) {
    throw Error(ErrorCode::InvalidArgument, "compare takes one or two input files");
  }
  if (o.files.size() == 1 && (o.group_a.empty() || o.group_b.empty())) {
    throw Error(ErrorCode::InvalidArgument,
                "a single input needs --group-a and --group-b selectors");
  }
  const auto first = load_input(o.files[0], g, report);
  std::optional<LoadResult> second;
  if (o.files.size() == 2 && o.files[1] != o.files[0]) second = load_input(o.files[1], g, report);
  const FrequencyTable& table_a = first.table;
  const FrequencyTable& table_b = second ? second->table : first.table;

  auto& r = report.results();
  auto side = [&](const FrequencyTable& table, const std::string& group, const char* key) {
    Selection s = o.sel;
    if (!group.empty()) s.group = group;
    r[key]["selection"] = selection_json(s);
    auto ranked = select_ranked(table, s, report, r[key]);
    r[key]["distribution"] = to_json(ranked);
    return normalize(ranked);
  };
  const auto pa = side(table_a, o.group_a, "a");
  const auto pb = side(table_b, o.group_b, "b");
  const auto space =
      o.space == "log_probability" ? CompareSpace::log_probability : CompareSpace::probability;
  const auto cmp = pointwise_compare(pa, pb, o.top_n, space);
  r["comparison"] = {{"r_squared", number(cmp.r_squared)},
                     {"n_ranks_compared", cmp.n_ranks_compared},
                     {"normalization", to_string(cmp.space)}};
  if (!g.out_dir.empty()) {
    std::ostringstream csv;
    csv << "rank,token_a,probability_a,token_b,probability_b\n";
    for (std::size_t k = 0; k < o.top_n; ++k) {
      csv << (k + 1) << ',' << detail::csv_field(pa.masses()[k].token) << ','
          << format_double(pa[k]) << ',' << detail::csv_field(pb.masses()[k].token) << ','
          << format_double(pb[k]) << '\n';
    }
    write_text(ensure_out_dir(g) / "compare_plot.csv", csv.str());
  }
  emit(report, g, out);
  return kOk;
}

struct EntropyOptions {
  std::string file;
  std::string split;
  bool cumulative = false;
  Selection sel;
};

/// Tables keyed by label; for period splits, optionally cumulated.
std::vector<std::pair<std::string, FrequencyTable>> split_tables(const FrequencyTable& table,
                                                                 const std::string& split,
                                                                 bool cumulative) {
  std::vector<std::pair<std::string, FrequencyTable>> out;
  if (split == "period") {
    auto periods = split_by_period(table);
    if (cumulative) periods = accumulate_periods(std::move(periods));
    for (auto& [p, t] : periods) out.emplace_back(std::to_string(p), std::move(t));
  } else {
    if (cumulative) {
      throw Error(ErrorCode::InvalidArgument, "--cumulative needs --split period");
    }
    for (auto& [label, t] : split_by_group(table, SplitKey::group)) {
      out.emplace_back(label, std::move(t));
    }
  }
  return out;
}

int cmd_entropy(const EntropyOptions& o, const GlobalOptions& g, Report& report,
                std::ostream& out) {
  const auto loaded = load_input(o.file, g, report);
  auto& r = report.results();
  r["selection"] = selection_json(o.sel);
  r["cumulative"] = o.cumulative;
  if (o.split.empty()) {
    if (o.cumulative) throw Error(ErrorCode::InvalidArgument, "--cumulative needs --split period");
    const auto ranked = select_ranked(loaded.table, o.sel, report, r);
    r["distribution"] = to_json(ranked);
    r["entropy"] = to_json(summarize_entropy(normalize(ranked)));
  } else {
    // Group/period selection applies before splitting.
    Selection inner = o.sel;
    std::optional<std::string> group;
    if (!inner.group.empty()) group = inner.group;
    const auto filtered = filter_table(loaded.table, group, parse_period_range(inner.period));
    inner.group.clear();
    inner.period.clear();
    r["split"] = o.split;
    for (const auto& [label, table] : split_tables(filtered, o.split, o.cumulative)) {
      json& section = r["splits"][label];
      try {
        const auto ranked = select_ranked(table, inner, report, section);
        section["distribution"] = to_json(ranked);
        section["entropy"] = to_json(summarize_entropy(normalize(ranked)));
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), o.split + " " + label);
      }
    }
  }
  emit(report, g, out);
  return kOk;
}

struct SimulateOptions {
  std::string config;
};

int cmd_simulate(const SimulateOptions& o, const GlobalOptions& g, Report& report,
                 std::ostream& out) {
  std::ifstream in(o.config, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open config", o.config);
  auto cfg = parse_evolution_config(in);
  report.add_input(o.config);
  if (g.seed) cfg.seed = *g.seed;
  report.set_rng(cfg.seed);

  const auto history = simulate_name_evolution(cfg);
  auto& r = report.results();
  r["config"] = {{"seed", cfg.seed},
                 {"generations", cfg.generations},
                 {"births_per_generation", cfg.births_per_generation},
                 {"birth_schedule", cfg.birth_schedule},
                 {"innovation_rate", number(cfg.innovation_rate)},
                 {"mortality_rate", number(cfg.mortality_rate)},
                 {"migration_rate", number(cfg.migration_rate)},
                 {"founders", cfg.founders},
                 {"founder_types", cfg.founder_types}};
  json pool = json::array();
  for (const auto& e : cfg.migrant_pool) pool.push_back({e.token, number(e.weight)});
  r["config"]["migrant_pool"] = pool;

  json series = json::array();
  for (const auto& snap : history) {
    series.push_back({{"generation", snap.generation},
                      {"population", snap.population},
                      {"n_types", snap.table.size()},
                      {"births", snap.births},
                      {"migrants", snap.migrants},
                      {"deaths", snap.deaths}});
  }
  r["series"] = series;

  const auto& last = history.back();
  json& fin = r["final"];
  fin["generation"] = last.generation;
  fin["population"] = last.population;
  fin["n_types"] = last.table.size();
  if (last.population > 0) {
    const auto ranked = rank_distribution(last.table);
    fin["entropy"] = to_json(summarize_entropy(normalize(ranked)));
    for (auto model : {Model::geometric, Model::power_law}) {
      try {
        fin["fits"][std::string(to_string(model))] =
            to_json(model == Model::geometric ? fit_geometric(ranked) : fit_power_law(ranked));
      } catch (const Error& e) {
        fin["fits"][std::string(to_string(model))] = error_json(e);
      }
    }
  }

  if (!g.out_dir.empty()) {
    std::vector<TableEntry> entries;
    for (const auto& snap : history) {
      for (const auto& e : snap.table.entries()) {
        entries.push_back({e.token, e.count, std::nullopt,
                           static_cast<Period>(snap.generation)});
      }
    }
    std::ostringstream csv;
    write_frequency_table(csv, FrequencyTable(std::move(entries)));
    write_text(ensure_out_dir(g) / "generations.csv", csv.str());
  }
  emit(report, g, out);
  return kOk;
}

struct TrendOptions {
  std::string tables;
  std::string covariate;
  std::string measure = "perplexity";
  bool cumulative = false;
  std::string transform_a = "identity";
  std::string transform_b = "identity";
  std::size_t top_k = 3;
  Count min_count = 1;
  std::string group;
};

Transform parse_transform(const std::string& s) {
  if (s == "log") return Transform::log;
  if (s == "scaled_log") return Transform::scaled_log;
  return Transform::identity;
}

Measure parse_measure(const std::string& s) {
  if (s == "entropy") return Measure::entropy;
  if (s == "top_k_share") return Measure::top_k_share;
  if (s == "type_count") return Measure::type_count;
  return Measure::perplexity;
}

/// A single file with a period column, or a directory of <period>.csv/.tsv
/// files.
std::vector<PeriodTable> load_period_tables(const std::string& path, const GlobalOptions& g,
                                            Report& report) {
  if (!fs::exists(path)) throw Error(ErrorCode::FileNotFound, "no such file or directory", path);
  if (!fs::is_directory(path)) return split_by_period(load_input(path, g, report).table);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<PeriodTable> out;
  for (const auto& f : files) {
    Period p = 0;
    if (!detail::parse_period(f.stem().string(), p)) continue;
    out.emplace_back(p, load_input(f.string(), g, report).table);
  }
  if (out.empty()) {
    throw Error(ErrorCode::EmptyFile, "directory holds no <period>.csv tables", path);
  }
  return out;
}

int cmd_trend(const TrendOptions& o, const GlobalOptions& g, Report& report, std::ostream& out) {
  auto tables = load_period_tables(o.tables, g, report);
  if (!fs::exists(o.covariate)) throw Error(ErrorCode::FileNotFound, "no such file", o.covariate);
  const auto covariate = load_covariate_series(o.covariate);
  report.add_input(o.covariate);

  MeasureOptions mo;
  mo.min_count = o.min_count;
  mo.top_k = o.top_k;
  mo.cumulative = o.cumulative;
  if (!o.group.empty()) mo.group = o.group;
  const auto series = measure_series(std::move(tables), parse_measure(o.measure), mo);
  const auto trend = correlate_series(covariate, series, parse_transform(o.transform_a),
                                      parse_transform(o.transform_b));
  auto& r = report.results();
  r["measure"] = o.measure;
  r["cumulative"] = o.cumulative;
  r["min_count"] = o.min_count;
  r["group"] = o.group.empty() ? json(nullptr) : json(o.group);
  if (o.measure == "top_k_share") r["top_k"] = o.top_k;
  r["series"] = to_json(series);
  r["covariate"] = to_json(covariate);
  r["trend"] = {{"slope", number(trend.slope)},
                {"intercept", number(trend.intercept)},
                {"r_squared", number(trend.r_squared)},
                {"n_points", trend.n_points},
                {"dropped_periods", trend.dropped_periods},
                {"transform_a", to_string(trend.transform_a)},
                {"transform_b", to_string(trend.transform_b)}};
  if (trend.dropped_periods > 0) {
    report.warn(std::to_string(trend.dropped_periods) + " periods without a partner dropped");
  }
  if (!g.out_dir.empty()) {
    std::map<Period, double> measured;
    for (const auto& p : series.points()) measured[p.period] = p.value;
    std::ostringstream csv;
    csv << "period,covariate,measure\n";
    for (const auto& p : covariate.points()) {
      auto it = measured.find(p.period);
      if (it == measured.end()) continue;
      csv << p.period << ',' << format_double(p.value) << ',' << format_double(it->second)
          << '\n';
    }
    write_text(ensure_out_dir(g) / "trend_plot.csv", csv.str());
  }
  emit(report, g, out);
  return kOk;
}

struct ReportOptions {
  std::string file;
  std::string split;
  std::size_t max_lag = 10;
  Selection sel;
};

json analyse(const RankedDistribution& ranked, std::size_t max_lag, Report& report,
             json& section, std::optional<std::pair<double, double>>& r2_pair) {
  std::optional<FitResult> geo, pl;
  try {
    fit_section(ranked, "both", section, report, geo, pl);
    r2_pair = std::make_pair(geo->r_squared, pl->r_squared);
  } catch (const Error& e) {
    section["distribution"] = to_json(ranked);
    section["fits"] = error_json(e);
  }
  const auto p = normalize(ranked);
  section["entropy"] = to_json(summarize_entropy(p));
  try {
    section["memorylessness"] = to_json(memorylessness_diagnostic(p, max_lag));
  } catch (const Error& e) {
    section["memorylessness"] = error_json(e);
  }
  return section;
}

int cmd_report(const ReportOptions& o, const GlobalOptions& g, Report& report,
               std::ostream& out) {
  const auto loaded = load_input(o.file, g, report);
  auto& r = report.results();
  r["selection"] = selection_json(o.sel);
  std::optional<std::pair<double, double>> pair;
  if (o.split.empty()) {
    const auto ranked = select_ranked(loaded.table, o.sel, report, r);
    analyse(ranked, o.max_lag, report, r, pair);
    emit(report, g, out);
    return kOk;
  }
  Selection inner = o.sel;
  std::optional<std::string> group;
  if (!inner.group.empty()) group = inner.group;
  const auto filtered = filter_table(loaded.table, group, parse_period_range(inner.period));
  inner.group.clear();
  inner.period.clear();
  r["split"] = o.split;
  std::vector<std::pair<double, double>> pairs;
  for (const auto& [label, table] : split_tables(filtered, o.split, false)) {
    json& section = r["splits"][label];
    try {
      const auto ranked = select_ranked(table, inner, report, section);
      analyse(ranked, o.max_lag, report, section, pair);
      if (pair) pairs.push_back(*pair);
      pair.reset();
    } catch (const Error& e) {
      section = error_json(e);
      report.warn(o.split + " " + label + " skipped: " + e.what());
    }
  }
  if (pairs.size() >= 2) {
    r["paired_geometric_vs_power_law"] = to_json(compare_fits_paired(pairs));
    r["paired_geometric_vs_power_law"]["n_pairs"] = pairs.size();
  } else {
    report.warn("fewer than 2 fitted splits; no paired test");
  }
  emit(report, g, out);
  return kOk;
}

std::string join_invocation(const std::vector<std::string>& args) {
  std::string s = "lexdist";
  for (const auto& a : args) {
    s += ' ';
    s += a;
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-frequency analysis of lexical distributions", "lexdist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  GlobalOptions g;
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json"}));
  app.add_option("--seed", g.seed, "Override the RNG seed");
  app.add_flag("--lenient", g.lenient, "Skip malformed rows instead of failing");
  app.add_option("--out", g.out_dir, "Directory for report.json and plot data");

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Check a frequency table");
  validate->add_option("file", validate_file)->required();

  std::string fit_file, fit_model = "both";
  Selection fit_sel;
  auto* fit = app.add_subcommand("fit", "Geometric and power-law rank-frequency fits");
  fit->add_option("file", fit_file)->required();
  fit->add_option("--model", fit_model)->check(CLI::IsMember({"geometric", "powerlaw", "both"}));
  add_selection(fit, fit_sel);

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Rank-aligned comparison of two distributions");
  compare->add_option("files", cmp.files)->required()->expected(1, 2);
  compare->add_option("--group-a", cmp.group_a);
  compare->add_option("--group-b", cmp.group_b);
  compare->add_option("--top-n", cmp.top_n);
  compare->add_option("--space", cmp.space)
      ->check(CLI::IsMember({"probability", "log_probability"}));
  add_selection(compare, cmp.sel);

  EntropyOptions ent;
  auto* entropy = app.add_subcommand("entropy", "Entropy and perplexity");
  entropy->add_option("file", ent.file)->required();
  entropy->add_option("--split", ent.split)->check(CLI::IsMember({"group", "period"}));
  entropy->add_flag("--cumulative", ent.cumulative);
  add_selection(entropy, ent.sel);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run the name-stock evolution model");
  simulate->add_option("config", sim.config)->required();

  TrendOptions tr;
  auto* trend = app.add_subcommand("trend", "Per-period measure against a covariate");
  trend->add_option("tables", tr.tables)->required();
  trend->add_option("covariate", tr.covariate)->required();
  trend->add_option("--measure", tr.measure)
      ->check(CLI::IsMember({"entropy", "perplexity", "top_k_share", "type_count"}));
  trend->add_flag("--cumulative", tr.cumulative);
  trend->add_option("--transform-a", tr.transform_a)
      ->check(CLI::IsMember({"identity", "log", "scaled_log"}));
  trend->add_option("--transform-b", tr.transform_b)
      ->check(CLI::IsMember({"identity", "log", "scaled_log"}));
  trend->add_option("--top-k", tr.top_k)->check(CLI::PositiveNumber);
  trend->add_option("--min-count", tr.min_count)->check(CLI::PositiveNumber);
  trend->add_option("--group", tr.group);

  ReportOptions rep;
  auto* full = app.add_subcommand("report", "Fits, entropy and memorylessness in one pass");
  full->add_option("file", rep.file)->required();
  full->add_option("--split", rep.split)->check(CLI::IsMember({"group", "period"}));
  full->add_option("--max-lag", rep.max_lag)->check(CLI::PositiveNumber);
  add_selection(full, rep.sel);

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << json{{"code", "InvalidArgument"}, {"message", e.what()}, {"context", "arguments"}}.dump()
        << '\n';
    return kInputError;
  }

  const auto* sub = app.get_subcommands().front();
  Report report(sub->get_name(), join_invocation(args));
  try {
    if (sub == validate) return cmd_validate(validate_file, g, report, out);
    if (sub == fit) return cmd_fit(fit_file, fit_sel, fit_model, g, report, out);
    if (sub == compare) return cmd_compare(cmp, g, report, out);
    if (sub == entropy) return cmd_entropy(ent, g, report, out);
    if (sub == simulate) return cmd_simulate(sim, g, report, out);
    if (sub == trend) return cmd_trend(tr, g, report, out);
    if (sub == full) return cmd_report(rep, g, report, out);
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return is_input_error(e.code()) ? kInputError : kAnalysisError;
  } catch (const std::exception& e) {
    err << json{{"code", "Internal"}, {"message", e.what()}, {"context", ""}}.dump() << '\n';
    return kAnalysisError;
  }
  return kInputError;
}

}  // namespace lexdist::cli
