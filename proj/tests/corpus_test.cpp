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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "lexdist/corpus.hpp"

namespace lexdist {
namespace {

LoadResult parse_csv(const std::string& text, bool lenient = false) {
  std::istringstream in(text);
  return parse_frequency_table(in, TableFormat::csv, lenient);
}

ErrorCode code_of_parse(const std::string& text, bool lenient = false) {
  try {
    parse_csv(text, lenient);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorCode::InvalidArgument;
}

TEST(LoaderTest, ReadsMinimalTable) {
  const auto r = parse_csv("token,count\na,3\nb,1\n");
  ASSERT_EQ(r.table.size(), 2u);
  EXPECT_EQ(r.table.count_of("a"), 3u);
  EXPECT_EQ(r.table.count_of("b"), 1u);
  EXPECT_EQ(r.table.total(), 4u);
  EXPECT_EQ(r.rows_read, 2u);
  EXPECT_EQ(r.duplicates_merged, 0u);
}

TEST(LoaderTest, SumsDuplicatesAndCountsThem) {
  const auto r = parse_csv("token,count\na,3\nb,1\na,2\n");
  EXPECT_EQ(r.table.size(), 2u);
  EXPECT_EQ(r.table.count_of("a"), 5u);
  EXPECT_EQ(r.duplicates_merged, 1u);
}

TEST(LoaderTest, HeaderAndEmptinessErrors) {
  EXPECT_EQ(code_of_parse("a,3\nb,1\n"), ErrorCode::MissingHeader);
  EXPECT_EQ(code_of_parse("word,count\na,3\n"), ErrorCode::MissingHeader);
  EXPECT_EQ(code_of_parse(""), ErrorCode::EmptyFile);
  EXPECT_EQ(code_of_parse("\n  \n"), ErrorCode::EmptyFile);
  // A header with no rows is a valid, empty table.
  EXPECT_TRUE(parse_csv("token,count\n").table.empty());
}

TEST(LoaderTest, StrictRejectsAndLenientSkipsMalformedRows) {
  const std::string text = "token,count\na,3\nb,-1\nc,x\n,4\nd,1,extra\ne,2\n";
  try {
    parse_csv(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedRow);
    EXPECT_EQ(e.context(), "<stream>:3");
  }
  const auto r = parse_csv(text, true);
  EXPECT_EQ(r.table.size(), 2u);
  EXPECT_EQ(r.rows_read, 6u);
  ASSERT_EQ(r.malformed.size(), 4u);
  EXPECT_EQ(r.malformed[0].line, 3u);
  EXPECT_EQ(r.malformed[3].line, 6u);
}

TEST(LoaderTest, HandlesBomCrlfTsvAndQuoting) {
  const auto crlf = parse_csv("\xEF\xBB\xBFtoken,count\r\na,3\r\nb,1\r\n");
  EXPECT_EQ(crlf.table, parse_csv("token,count\na,3\nb,1\n").table);

  std::istringstream tsv("token\tcount\tgroup\nx, y\t4\tg1\n");
  const auto t = parse_frequency_table(tsv, TableFormat::tsv);
  ASSERT_EQ(t.table.size(), 1u);
  EXPECT_EQ(t.table.entries()[0].token, "x, y");
  EXPECT_EQ(t.table.entries()[0].group, std::optional<std::string>("g1"));

  const auto q = parse_csv("token,count\n\"Smith, Jr\",2\n\"say \"\"hi\"\"\",1\n");
  EXPECT_EQ(q.table.count_of("Smith, Jr"), 2u);
  EXPECT_EQ(q.table.count_of("say \"hi\""), 1u);
  EXPECT_EQ(code_of_parse("token,count\n\"open,2\n"), ErrorCode::MalformedRow);
}

TEST(LoaderTest, GroupsAndPeriods) {
  const auto r = parse_csv("token,count,group,period\na,1,M,1910\na,2,F,1910\nb,3,,\n");
  EXPECT_EQ(r.table.size(), 3u);
  EXPECT_TRUE(r.table.has_groups());
  EXPECT_TRUE(r.table.has_periods());
  EXPECT_EQ(r.table.count_of("a"), 3u);
  EXPECT_EQ(code_of_parse("token,count,group,period\na,1,M,19x0\n"), ErrorCode::MalformedRow);
}

TEST(LoaderTest, SerializationRoundTripIsIdempotent) {
  const std::string messy =
      "token,count,group,period\nb,2,F,1920\n\"a,b\",1,M,1910\nb,5,F,1920\nc,0,,\nq\"x,7,M,\n";
  const auto first = parse_csv(messy).table;
  const auto text = to_csv(first);
  const auto second = parse_csv(text).table;
  EXPECT_EQ(first, second);
  EXPECT_EQ(to_csv(second), text);

  std::ostringstream tsv;
  write_frequency_table(tsv, first, TableFormat::tsv);
  std::istringstream back(tsv.str());
  EXPECT_EQ(parse_frequency_table(back, TableFormat::tsv).table, first);
}

TEST(LoaderTest, FileErrorsAndFormatDetection) {
  try {
    load_frequency_table("/nonexistent/table.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FileNotFound);
    EXPECT_TRUE(is_input_error(e.code()));
  }
  EXPECT_EQ(format_from_path("x.tsv"), TableFormat::tsv);
  EXPECT_EQ(format_from_path("x.TSV"), TableFormat::tsv);
  EXPECT_EQ(format_from_path("x.csv"), TableFormat::csv);
}

WordList colours() { return WordList("colours", {"red", "blue", "chartreuse"}); }

TEST(ExtractionTest, RanksMembersAndReportsMissing) {
  const auto table = FrequencyTable::from_counts({{"red", 5}, {"blue", 3}, {"the", 100}});
  const auto x = extract_category(table, colours());
  ASSERT_EQ(x.ranked.size(), 2u);
  EXPECT_EQ(x.ranked.items()[0].token, "red");
  EXPECT_EQ(x.ranked.items()[1].token, "blue");
  EXPECT_EQ(x.report.matched, 2u);
  EXPECT_EQ(x.report.missing, std::vector<std::string>{"chartreuse"});
  EXPECT_TRUE(x.report.excluded_low_frequency.empty());
}

TEST(ExtractionTest, NoMatchesIsAnError) {
  const auto table = FrequencyTable::from_counts({{"the", 100}});
  try {
    extract_category(table, colours());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoMatches);
    EXPECT_FALSE(is_input_error(e.code()));
  }
}

TEST(ExtractionTest, CasePolicyAndLowFrequency) {
  const auto table =
      FrequencyTable::from_counts({{"Red", 2}, {"red", 3}, {"blue", 0}, {"BLUE", 1}});
  const auto folded = extract_category(table, colours(), 2);
  EXPECT_EQ(folded.ranked.items()[0].token, "red");
  EXPECT_EQ(folded.ranked.items()[0].count, 5u);
  EXPECT_EQ(folded.report.excluded_low_frequency, std::vector<std::string>{"blue"});
  EXPECT_EQ(folded.report.matched, 2u);

  const WordList exact("colours", {"red", "blue"}, CasePolicy::exact);
  const auto x = extract_category(table, exact);
  EXPECT_EQ(x.ranked.items()[0].count, 3u);
  EXPECT_EQ(x.report.excluded_low_frequency, std::vector<std::string>{"blue"});
}

TEST(ExtractionTest, WordListFileIgnoresCommentsAndDuplicates) {
  const auto path = std::filesystem::temp_directory_path() / "lexdist_words_test.txt";
  {
    std::ofstream out(path);
    out << "# verbs\nThrow\n\n  toss \nthrow\r\n";
  }
  const auto list = load_word_list(path);
  EXPECT_EQ(list.name(), "lexdist_words_test");
  EXPECT_EQ(list.tokens(), (std::vector<std::string>{"throw", "toss"}));
  std::filesystem::remove(path);
}

TEST(SplitTest, ByGroupWithUntaggedBucket) {
  const auto table = parse_csv(
                         "token,count,group\na,1,M:Dalry\nb,2,M:Dalry\na,4,F:Largs\nc,9,\n")
                         .table;
  const auto parts = split_by_group(table, SplitKey::group);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts.at("M:Dalry").total(), 3u);
  EXPECT_EQ(parts.at("F:Largs").total(), 4u);
  EXPECT_EQ(parts.at(std::string(kUntaggedBucket)).total(), 9u);

  // The partition is complete and disjoint.
  Count sum = 0;
  std::size_t rows = 0;
  for (const auto& [label, part] : parts) {
    sum += part.total();
    rows += part.size();
  }
  EXPECT_EQ(sum, table.total());
  EXPECT_EQ(rows, table.size());
}

TEST(SplitTest, UntaggedOnlyTable) {
  const auto table = FrequencyTable::from_counts({{"a", 1}});
  try {
    split_by_group(table, SplitKey::group);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoTaggedEntries);
  }
  const auto parts = split_by_group(table, SplitKey::group, true);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts.begin()->first, kUntaggedBucket);
}

TEST(SplitTest, ByPeriodIsNumericallyOrdered) {
  const auto table =
      parse_csv("token,count,group,period\na,1,,900\nb,2,,1000\nc,3,,-5\nd,4,,\n").table;
  const auto periods = split_by_period(table);
  ASSERT_EQ(periods.size(), 3u);
  EXPECT_EQ(periods[0].first, -5);
  EXPECT_EQ(periods[1].first, 900);
  EXPECT_EQ(periods[2].first, 1000);
  EXPECT_EQ(periods[2].second.count_of("b"), 2u);

  const auto by_label = split_by_group(table, SplitKey::period);
  EXPECT_EQ(by_label.at("1000").total(), 2u);
  EXPECT_EQ(by_label.at(std::string(kUntaggedBucket)).total(), 4u);
}

}  // namespace
}  // namespace lexdist
