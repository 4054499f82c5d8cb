// Copyright 2026 The compsearch Authors.
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


#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "compsearch/clock.h"
#include "compsearch/connector_mds.h"
#include "compsearch/error.h"
#include "compsearch/query_model.h"
#include "compsearch/saea_extractor.h"
#include "oracles.h"
#include "test_support.h"

namespace compsearch {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using ::testing::SizeIs;
using compsearch_test::FakeFetcher;

Query Q(std::vector<std::string> keywords) {
  Query q;
  q.raw_text = "q";
  q.keywords = std::move(keywords);
  return q;
}

DatabaseDescriptor Db() {
  DatabaseDescriptor d;
  d.name = "db";
  d.query_url_template = "h://db/{QUERY}";
  d.link_pattern = R"re(<a class="r" href="([^"]+)")re";
  d.topic_tags = {"t"};
  d.citation_pattern = R"re(<div class="cite">(.*?)</div>)re";
  d.extraction_rules = {
      {TargetKind::kExcerpt, "<p class=\"x\">(.*?)</p>", 1, 1},
      {TargetKind::kImage, R"re(<img[^>]+src="([^"]+)")re", 1, std::nullopt},
  };
  return d;
}

TEST(RelevanceScoreTest, Examples) {
  EXPECT_EQ(RelevanceScore("", Q({"slave"})), 0);
  EXPECT_EQ(RelevanceScore("trade trade slave", Q({"slave", "trade"})), 3);
  EXPECT_EQ(RelevanceScore("slavery", Q({"slave"})), 0);
  EXPECT_EQ(RelevanceScore("Slave, SLAVE. (slave)", Q({"slave"})), 3);
}

TEST(RelevanceScoreTest, SubstringModeCountsInsideWords) {
  EXPECT_EQ(RelevanceScore("slavery Slave", Q({"slave"}), MatchMode::kSubstring), 2);
  EXPECT_EQ(RelevanceScore("aaaa", Q({"aa"}), MatchMode::kSubstring), 2);
}

TEST(ProximityScoreTest, Examples) {
  EXPECT_DOUBLE_EQ(ProximityScore("slave trade", Q({"slave", "trade"})), 0.5);
  std::string far = "slave";
  for (int i = 0; i < 100; ++i) far += " filler";
  far += " trade";
  EXPECT_DOUBLE_EQ(ProximityScore(far, Q({"slave", "trade"})), 1.0 / 102);
  EXPECT_EQ(ProximityScore("slave only", Q({"slave", "trade"})), 0);
  EXPECT_DOUBLE_EQ(ProximityScore("x slave y", Q({"slave"})), 1.0);
  EXPECT_DOUBLE_EQ(
      ProximityScore("trade a b slave c trade slave", Q({"slave", "trade"})), 0.5);
}

TEST(ScoringPropertyTest, MatchesBruteForceOracles) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> vocab = {"slave", "trade", "ship", "Atlantic",
                                          "port", "ledger", "Slave,", "(trade)"};
  for (int round = 0; round < 200; ++round) {
    std::uniform_int_distribution<int> len(0, 60), pick(0, vocab.size() - 1);
    std::string body;
    for (int i = len(rng); i > 0; --i) body += vocab[pick(rng)] + " ";
    const Query q = round % 2 ? Q({"slave", "trade"}) : Q({"ship", "port", "ledger"});
    EXPECT_EQ(RelevanceScore(body, q),
              compsearch_test::CountKeywordTokens(body, q.keywords))
        << body;
    EXPECT_DOUBLE_EQ(ProximityScore(body, q),
                     compsearch_test::BruteForceProximity(body, q.keywords))
        << body;
  }
}

TEST(ApplyRuleTest, ImagesResolvedAndFiltered) {
  const std::string body =
      R"(<img alt="a" src="/img/1.png"><img class="b" src="http://cdn/2.png">)";
  const ExtractionRule rule{TargetKind::kImage, R"re(<img[^>]+src="([^"]+)")re", 1, {}};
  EXPECT_THAT(ApplyRule(body, rule, "http://db/doc/x"),
              ElementsAre(Component{TargetKind::kImage, "http://db/img/1.png"},
                          Component{TargetKind::kImage, "http://cdn/2.png"}));
  EXPECT_THAT(ApplyRule(body, rule, "db.example/doc"),
              ElementsAre(Component{TargetKind::kImage, "http://cdn/2.png"}));
  EXPECT_THAT(ApplyRule("<p>no images</p>", rule, "http://db/"), IsEmpty());
}

TEST(ApplyRuleTest, MaxMatchesCapsAndTextIsCleaned) {
  const ExtractionRule rule{TargetKind::kExcerpt, "<p>(.*?)</p>", 1, 1};
  EXPECT_THAT(ApplyRule("<p>first <b>one</b> &amp; more</p><p>2</p><p>3</p>",
                        rule, "http://db/"),
              ElementsAre(Component{TargetKind::kExcerpt, "first one & more"}));
}

TEST(ApplyRuleTest, CaptureGroupOutOfRangeThrows) {
  try {
    ApplyRule("x", {TargetKind::kHeading, "(x)", 2, {}}, "http://db/");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPattern);
  }
}

TEST(ExtractCitationTest, FirstNonEmptyMatch) {
  const std::string pattern = R"re(<div class="cite">(.*?)</div>)re";
  EXPECT_EQ(ExtractCitation(R"(<div class="cite">Avalon Project, 2008</div>)", pattern),
            "Avalon Project, 2008");
  EXPECT_EQ(ExtractCitation("<p>none</p>", pattern), std::nullopt);
  EXPECT_EQ(ExtractCitation(R"(<div class="cite">A</div><div class="cite">B</div>)",
                            pattern),
            "A");
}

TEST(AnalyzeSourceTest, RelevantPageGetsRequestedKinds) {
  const FetchedPage page{
      "http://db/doc/1",
      R"(<h1>The slave trade</h1><p class="x">An account of the trade.</p>)"
      R"(<img src="fig.png"><div class="cite">Avalon Project, 2008</div>)",
      0};
  const auto record = AnalyzeSource(page, Db(), Q({"slave", "trade"}),
                                    {TargetKind::kCitation, TargetKind::kExcerpt}, 1);
  ASSERT_TRUE(record.has_value());
  EXPECT_EQ(record->url, "http://db/doc/1");
  EXPECT_EQ(record->database_name, "db");
  EXPECT_EQ(record->relevance_score, 3);
  EXPECT_DOUBLE_EQ(record->proximity_score, 0.5);
  EXPECT_EQ(record->citation, "Avalon Project, 2008");
  EXPECT_THAT(record->components,
              ElementsAre(Component{TargetKind::kCitation, "Avalon Project, 2008"},
                          Component{TargetKind::kExcerpt, "An account of the trade."}));

  const auto with_images = AnalyzeSource(page, Db(), Q({"slave"}),
                                         {TargetKind::kImage}, 1);
  ASSERT_TRUE(with_images.has_value());
  EXPECT_THAT(with_images->components,
              ElementsAre(Component{TargetKind::kImage, "http://db/doc/fig.png"}));
}

TEST(AnalyzeSourceTest, FilteredPages) {
  const FetchedPage irrelevant{"http://db/2", R"(<p class="x">ships</p>)", 0};
  EXPECT_EQ(AnalyzeSource(irrelevant, Db(), Q({"slave"}), {TargetKind::kExcerpt}, 1),
            std::nullopt);
  const FetchedPage empty{"http://db/3", "", 0};
  EXPECT_EQ(AnalyzeSource(empty, Db(), Q({"slave"}), {TargetKind::kExcerpt}, 0),
            std::nullopt);
}

TEST(AnalyzeSourceTest, BadRuleBecomesDiagnostic) {
  DatabaseDescriptor d = Db();
  d.extraction_rules.push_back({TargetKind::kHeading, "(", 1, {}});
  std::vector<Diagnostic> diagnostics;
  const FetchedPage page{"http://db/4", "slave", 0};
  EXPECT_EQ(AnalyzeSource(page, d, Q({"slave"}), {TargetKind::kHeading}, 0,
                          &diagnostics),
            std::nullopt);
  ASSERT_THAT(diagnostics, SizeIs(1));
  EXPECT_EQ(diagnostics[0].url, "http://db/4");
}

TEST(RunSaeaTest, ReplayedColumbusTelemetry) {
  const auto catalog = LoadCatalog(COMPSEARCH_FIXTURES_DIR "/catalog.json");
  ManualClock base;
  ReplayClock clock(base, {{"ew", 2.88}, {"ya", 3.78}, {"ae", 4.75}, {"jcb", 5.21}});
  DefaultFetcher fetcher(clock, {std::string(kDefaultUserAgent),
                                 COMPSEARCH_FIXTURES_DIR, false});
  const Query q = ParseQuery("christopher columbus", {"exploration"}, {});
  const MdsResult mds = RunMds(q, catalog, fetcher, clock, 0);
  const SaeaResult saea =
      RunSaea(mds.link_sets, catalog, q, SaeaOptions{}, fetcher, clock, 0);
  EXPECT_THAT(saea.points, ElementsAre(TelemetryPoint{2.88, 33}, TelemetryPoint{3.78, 46},
                                       TelemetryPoint{4.75, 8}, TelemetryPoint{5.21, 54}));
  EXPECT_THAT(saea.records, SizeIs(141));
  EXPECT_THAT(saea.diagnostics, IsEmpty());
  for (const SourceRecord& r : saea.records) {
    EXPECT_GE(r.relevance_score, kDefaultMinRelevance);
    EXPECT_FALSE(r.components.empty());
    EXPECT_TRUE(saea.pages.contains(r.url));
  }
}

TEST(RunSaeaTest, EmptyLinkSetsGiveZeroPoints) {
  FakeFetcher fetcher;
  ManualClock base;
  ReplayClock clock(base, {{"a", 1.5}, {"b", 2.5}});
  DatabaseDescriptor a = Db(), b = Db();
  a.name = "a";
  b.name = "b";
  const SaeaResult r = RunSaea({}, std::vector{a, b}, Q({"x"}), SaeaOptions{},
                               fetcher, clock, 0);
  EXPECT_THAT(r.records, IsEmpty());
  EXPECT_THAT(r.points, ElementsAre(TelemetryPoint{1.5, 0}, TelemetryPoint{2.5, 0}));
}

TEST(RunSaeaTest, InfiniteThresholdFiltersEverything) {
  FakeFetcher fetcher;
  fetcher.bodies["h://db/1"] = R"(<p class="x">slave slave</p>)";
  fetcher.bodies["h://db/2"] = R"(<p class="x">slave</p>)";
  ManualClock clock;
  LinkSet ls{"db", {"h://db/1", "h://db/2", "h://db/missing"}, 0, LinkSetStatus::kOk};
  SaeaOptions options;
  options.min_relevance = std::numeric_limits<double>::infinity();
  const SaeaResult r =
      RunSaea(std::vector{ls}, std::vector{Db()}, Q({"slave"}), options, fetcher, clock, 0);
  EXPECT_THAT(r.records, IsEmpty());
  ASSERT_THAT(r.points, SizeIs(1));
  EXPECT_EQ(r.points[0].y, 0);
  ASSERT_THAT(r.diagnostics, SizeIs(1));
  EXPECT_EQ(r.diagnostics[0].url, "h://db/missing");

  options.min_relevance = 2;
  const SaeaResult kept =
      RunSaea(std::vector{ls}, std::vector{Db()}, Q({"slave"}), options, fetcher, clock, 0);
  ASSERT_THAT(kept.records, SizeIs(1));
  EXPECT_EQ(kept.records[0].url, "h://db/1");
}

}  // namespace
}  // namespace compsearch
