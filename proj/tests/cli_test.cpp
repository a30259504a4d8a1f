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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "cli.hpp"
#include "lexdist/lexdist.hpp"

namespace lexdist::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::string kDir = LEXDIST_FIXTURE_DIR;
std::string fixture(const std::string& name) { return kDir + "/" + name; }

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  json body() const { return json::parse(out).at("body"); }
  json results() const { return body().at("results"); }
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

/// Runs the installed binary in a child process; stdout and stderr are
/// captured through temporary files.
Outcome spawn(const std::string& args) {
  const auto tmp = fs::temp_directory_path();
  const auto out_path = tmp / "lexdist_cli_test.out";
  const auto err_path = tmp / "lexdist_cli_test.err";
  const std::string cmd = std::string(LEXDIST_CLI_PATH) + " " + args + " >" +
                          out_path.string() + " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  o.out = slurp(out_path);
  o.err = slurp(err_path);
  return o;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("lexdist_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string first_line(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { setenv("SOURCE_DATE_EPOCH", "1700000000", 1); }
};

TEST_F(CliTest, ValidateSummarizesTable) {
  const auto o = invoke({"validate", fixture("four_parish.csv")});
  ASSERT_EQ(o.code, kOk) << o.err;
  const auto r = o.results();
  EXPECT_EQ(r["total"], 14305);
  EXPECT_EQ(r["groups"].size(), 8u);
  EXPECT_EQ(r["malformed_rows"], 0);
  const auto body = o.body();
  EXPECT_EQ(body["tool_version"], std::string(kToolVersion));
  EXPECT_EQ(body["command"], "validate");
  EXPECT_EQ(body["input_digests"][0]["sha256"], file_sha256(fixture("four_parish.csv")));
}

TEST_F(CliTest, BodyDigestCoversCanonicalBody) {
  const auto o = invoke({"fit", fixture("exact_zipf.csv")});
  ASSERT_EQ(o.code, kOk) << o.err;
  const auto envelope = json::parse(o.out);
  EXPECT_EQ(envelope["body_sha256"], sha256_hex(canonical_dump(envelope["body"])));
  EXPECT_EQ(envelope["generated_at"], "2023-11-14T22:13:20Z");
}

TEST_F(CliTest, Sha256KnownAnswers) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, FitMatchesLibraryBitForBit) {
  for (const std::string name :
       {"exact_geometric.csv", "exact_zipf.csv", "korean_shaped.csv", "vietnamese_shaped.csv",
        "four_parish.csv", "delaware_decades.csv", "throw_verbs.csv"}) {
    const auto o = invoke({"fit", fixture(name), "--min-count", "2"});
    ASSERT_EQ(o.code, kOk) << name << o.err;
    const auto ranked = rank_distribution(load_frequency_table(fixture(name)).table,
                                          {2, std::nullopt, std::nullopt});
    const auto geo = fit_geometric(ranked);
    const auto pl = fit_power_law(ranked);
    const auto fits = o.results()["fits"];
    EXPECT_EQ(fits["geometric"]["slope"].get<double>(), geo.slope) << name;
    EXPECT_EQ(fits["geometric"]["intercept"].get<double>(), geo.intercept) << name;
    EXPECT_EQ(fits["geometric"]["r_squared"].get<double>(), geo.r_squared) << name;
    EXPECT_EQ(fits["power_law"]["slope"].get<double>(), pl.slope) << name;
    EXPECT_EQ(fits["power_law"]["r_squared"].get<double>(), pl.r_squared) << name;
    EXPECT_EQ(o.results()["distribution"]["n_types"].get<std::size_t>(), ranked.size());
  }
}

TEST_F(CliTest, FitSelectionFlags) {
  auto o = invoke({"fit", fixture("delaware_decades.csv"), "--group", "F", "--period",
                   "1950:1970", "--model", "geometric"});
  ASSERT_EQ(o.code, kOk) << o.err;
  const auto ranked = rank_distribution(load_frequency_table(fixture("delaware_decades.csv")).table,
                                        {1, std::string("F"), PeriodRange{1950, 1970}});
  EXPECT_EQ(o.results()["fits"]["geometric"]["r_squared"].get<double>(),
            fit_geometric(ranked).r_squared);
  EXPECT_FALSE(o.results()["fits"].contains("power_law"));

  o = invoke({"fit", fixture("throw_verbs.csv"), "--word-list", fixture("throw_verbs.txt")});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(o.results()["distribution"]["n_types"], 27);
  EXPECT_EQ(o.results()["extraction"]["missing"].size(), 2u);
}

TEST_F(CliTest, CompareMatchesLibraryAndOracle) {
  const auto o = invoke({"compare", fixture("korean_shaped.csv"),
                         fixture("vietnamese_shaped.csv"), "--top-n", "50"});
  ASSERT_EQ(o.code, kOk) << o.err;
  const auto kr = normalize(rank_distribution(load_frequency_table(fixture("korean_shaped.csv")).table));
  const auto vn =
      normalize(rank_distribution(load_frequency_table(fixture("vietnamese_shaped.csv")).table));
  const double expected = pointwise_compare(kr, vn, 50, CompareSpace::probability).r_squared;
  EXPECT_EQ(o.results()["comparison"]["r_squared"].get<double>(), expected);
  EXPECT_NEAR(expected, 0.9987446577352873, 1e-12);

  const auto groups = invoke({"compare", fixture("four_parish.csv"), "--group-a", "M:Dalry",
                              "--group-b", "F:Largs", "--top-n", "10", "--space",
                              "log_probability"});
  ASSERT_EQ(groups.code, kOk) << groups.err;
  EXPECT_EQ(groups.results()["comparison"]["normalization"], "log_probability");
}

TEST_F(CliTest, EntropySplitsMatchLibrary) {
  const auto o = invoke({"entropy", fixture("four_parish.csv"), "--split", "group"});
  ASSERT_EQ(o.code, kOk) << o.err;
  const auto table = load_frequency_table(fixture("four_parish.csv")).table;
  for (const auto& [label, part] : split_by_group(table, SplitKey::group)) {
    const double h = entropy_bits(normalize(rank_distribution(part)));
    EXPECT_EQ(o.results()["splits"][label]["entropy"]["entropy_bits"].get<double>(), h) << label;
  }

  const auto cum = invoke({"entropy", fixture("delaware_decades.csv"), "--split", "period",
                           "--cumulative", "--min-count", "5"});
  ASSERT_EQ(cum.code, kOk) << cum.err;
  EXPECT_NEAR(cum.results()["splits"]["2000"]["entropy"]["perplexity"].get<double>(),
              231.65603804141506, 1e-9);
}

TEST_F(CliTest, TrendOnAffineFixtureIsExact) {
  const auto o = invoke({"trend", fixture("affine_tables.csv"), fixture("affine_covariate.csv"),
                         "--measure", "type_count"});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_NEAR(o.results()["trend"]["r_squared"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(o.results()["trend"]["n_points"], 6);
}

TEST_F(CliTest, TrendMatchesLibraryOnDecades) {
  const auto o = invoke({"trend", fixture("delaware_decades.csv"),
                         fixture("delaware_population.csv"), "--measure", "perplexity",
                         "--cumulative", "--min-count", "5"});
  ASSERT_EQ(o.code, kOk) << o.err;
  MeasureOptions opts;
  opts.min_count = 5;
  opts.cumulative = true;
  const auto series = measure_series(
      split_by_period(load_frequency_table(fixture("delaware_decades.csv")).table),
      Measure::perplexity, opts);
  const auto trend =
      correlate_series(load_covariate_series(fixture("delaware_population.csv")), series);
  EXPECT_EQ(o.results()["trend"]["r_squared"].get<double>(), trend.r_squared);
  EXPECT_NEAR(trend.r_squared, 0.99051219636475, 1e-12);
}

TEST_F(CliTest, TrendReadsDirectoryOfPeriodTables) {
  const auto dir = scratch_dir("trend_tables");
  fs::create_directories(dir);
  for (int i = 0; i < 4; ++i) {
    std::ofstream out(dir / (std::to_string(2001 + i) + ".csv"));
    out << "token,count\n";
    for (int k = 0; k < 2 * i + 3; ++k) out << "w" << k << ",1\n";
  }
  const auto o = invoke({"trend", dir.string(), fixture("affine_covariate.csv"), "--measure",
                         "type_count"});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(o.results()["trend"]["n_points"], 4);
  EXPECT_NEAR(o.results()["trend"]["r_squared"].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, SimulateIsSeedDeterministic) {
  const auto a = invoke({"simulate", fixture("sim_migration.cfg")});
  const auto b = invoke({"simulate", fixture("sim_migration.cfg")});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.body()["rng_algorithm"], std::string(Rng::kAlgorithm));
  const auto c = invoke({"--seed", "12345", "simulate", fixture("sim_migration.cfg")});
  ASSERT_EQ(c.code, kOk) << c.err;
  EXPECT_EQ(c.body()["seed"], 12345);
  EXPECT_NE(c.results()["series"], a.results()["series"]);

  std::ifstream in(fixture("sim_migration.cfg"));
  const auto history = simulate_name_evolution(parse_evolution_config(in));
  EXPECT_EQ(a.results()["final"]["n_types"].get<std::size_t>(), history.back().table.size());
  EXPECT_EQ(a.results()["final"]["population"].get<std::size_t>(), history.back().population);
}

TEST_F(CliTest, ReportsAreByteIdenticalAcrossProcesses) {
  for (const std::string& args :
       {"report " + fixture("delaware_decades.csv") + " --split period --min-count 5",
        "simulate " + fixture("sim_founder.cfg"),
        "compare " + fixture("korean_shaped.csv") + " " + fixture("vietnamese_shaped.csv")}) {
    const auto first = spawn(args);
    const auto second = spawn(args);
    ASSERT_EQ(first.code, 0) << args << first.err;
    EXPECT_EQ(first.out, second.out) << args;
    EXPECT_FALSE(first.out.empty());
  }
}

TEST_F(CliTest, ReportSectionAndPairedTest) {
  const auto o = invoke({"report", fixture("delaware_decades.csv"), "--split", "period",
                         "--min-count", "5"});
  ASSERT_EQ(o.code, kOk) << o.err;
  const auto paired = o.results()["paired_geometric_vs_power_law"];
  EXPECT_EQ(paired["n_pairs"], 10);
  EXPECT_NEAR(paired["t_statistic"].get<double>() / 46.69225273917663, 1.0, 1e-9);
  EXPECT_TRUE(o.results()["splits"]["1910"].contains("memorylessness"));
}

TEST_F(CliTest, OutDirectoryHoldsReportAndPlotData) {
  const auto dir = scratch_dir("out");
  auto o = invoke({"--out", dir.string(), "fit", fixture("exact_geometric.csv")});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(first_line(dir / "fit_plot.csv"),
            "rank,count,log10_rank,log10_count,fitted_log10_count_geometric,"
            "fitted_log10_count_powerlaw");
  std::ifstream report(dir / "report.json", std::ios::binary);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(report), {}), o.out);

  o = invoke({"--out", dir.string(), "compare", fixture("korean_shaped.csv"),
              fixture("vietnamese_shaped.csv"), "--top-n", "20"});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(first_line(dir / "compare_plot.csv"),
            "rank,token_a,probability_a,token_b,probability_b");

  o = invoke({"--out", dir.string(), "simulate", fixture("sim_founder.cfg")});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_TRUE(fs::exists(dir / "generations.csv"));
  const auto generations = load_frequency_table(dir / "generations.csv").table;
  EXPECT_EQ(split_by_period(generations).size(), 50u);

  o = invoke({"--out", dir.string(), "trend", fixture("affine_tables.csv"),
              fixture("affine_covariate.csv"), "--measure", "type_count"});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_TRUE(fs::exists(dir / "trend_plot.csv"));
}

struct ExitCase {
  std::string args;
  int code;
  std::string error;
};

TEST_F(CliTest, ExitCodesAndStructuredErrors) {
  const std::vector<ExitCase> cases = {
      {"fit /nonexistent.csv", 2, "FileNotFound"},
      {"validate " + fixture("sim_founder.cfg"), 2, "MissingHeader"},
      {"fit " + fixture("exact_zipf.csv") + " --min-count 0", 2, "InvalidArgument"},
      {"fit " + fixture("exact_zipf.csv") + " --model cubic", 2, "InvalidArgument"},
      {"frobnicate", 2, "InvalidArgument"},
      {"fit " + fixture("exact_zipf.csv") + " --min-count 100000000000000000", 3, "EmptyAfterFilter"},
      {"fit " + fixture("exact_zipf.csv") + " --group nosuch", 3, "EmptyAfterFilter"},
      {"compare " + fixture("exact_geometric.csv") + " " + fixture("exact_zipf.csv"), 3,
       "TooFewRanks"},
      {"simulate " + fixture("sim_extinct.cfg"), 3, "PopulationExtinct"},
      {"trend " + fixture("affine_tables.csv") + " " + fixture("disjoint_covariate.csv") +
           " --measure type_count",
       3, "TooFewSharedPeriods"},
      {"fit " + fixture("throw_verbs.csv") + " --word-list " + fixture("four_parish.csv"), 3,
       "NoMatches"},
      {"entropy " + fixture("exact_zipf.csv") + " --split group", 3, "NoTaggedEntries"},
  };
  for (const auto& c : cases) {
    const auto o = spawn(c.args);
    EXPECT_EQ(o.code, c.code) << c.args << "\n" << o.err;
    EXPECT_TRUE(o.out.empty()) << c.args;
    const auto err = json::parse(o.err, nullptr, false);
    ASSERT_FALSE(err.is_discarded()) << c.args << ": " << o.err;
    EXPECT_EQ(err["code"], c.error) << c.args;
    EXPECT_TRUE(err.contains("message"));
    EXPECT_TRUE(err.contains("context"));
  }
}

TEST_F(CliTest, LenientSkipsMalformedRows) {
  const auto path = fs::temp_directory_path() / "lexdist_cli_malformed.csv";
  {
    std::ofstream out(path);
    out << "token,count\na,3\nb,x\nc,1\n";
  }
  EXPECT_EQ(spawn("validate " + path.string()).code, 2);
  const auto o = invoke({"--lenient", "validate", path.string()});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(o.results()["malformed_rows"], 1);
  EXPECT_FALSE(o.body()["warnings"].empty());
  fs::remove(path);
}

TEST(FormatTest, NumbersAreShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(number(std::nan("")), "nan");
  EXPECT_EQ(number(0.25), 0.25);
}

}  // namespace
}  // namespace lexdist::cli
