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


#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <string>
#include <thread>
#include <vector>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "compsearch/clock.h"
#include "compsearch/connector_mds.h"
#include "compsearch/error.h"
#include "compsearch/query_model.h"
#include "test_support.h"

namespace compsearch {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using ::testing::SizeIs;
using compsearch_test::FakeFetcher;
using compsearch_test::TempDir;

Query Q(std::vector<std::string> keywords) {
  Query q;
  q.raw_text = "q";
  q.keywords = std::move(keywords);
  return q;
}

DatabaseDescriptor Db(std::string name, std::string templ, int pages = 1) {
  DatabaseDescriptor d;
  d.name = std::move(name);
  d.query_url_template = std::move(templ);
  d.link_pattern = R"re(<a class="r" href="([^"]+)")re";
  d.result_page_limit = pages;
  d.topic_tags = {"t"};
  return d;
}

std::string Hits(std::initializer_list<const char*> hrefs) {
  std::string body = "<html><a href=\"/nav\">nav</a>";
  for (const char* h : hrefs) body += std::string("<a class=\"r\" href=\"") + h + "\">x</a>";
  return body + "</html>";
}

class LocalServer {
 public:
  LocalServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server& server() { return server_; }
  std::string Url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

// Listens but never accepts, so requests hang until the client gives up.
class BlackHole {
 public:
  BlackHole() {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    ::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
    ::listen(fd_, 4);
    socklen_t len = sizeof(addr);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
  }
  ~BlackHole() { ::close(fd_); }
  std::string Url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/slow";
  }

 private:
  int fd_ = -1;
  int port_ = 0;
};

TEST(FormatSearchUrlTest, JoinsEncodedKeywordsWithPlus) {
  EXPECT_EQ(FormatSearchUrl(Db("d", "db.example/search?q={QUERY}"),
                            Q({"slave", "trade"})),
            "db.example/search?q=slave+trade");
  EXPECT_EQ(FormatSearchUrl(Db("d", "x/{QUERY}"), Q({"a"})), "x/a");
  EXPECT_EQ(FormatSearchUrl(Db("d", "x?q={QUERY}"), Q({"w&w"})), "x?q=w%26w");
}

TEST(FormatSearchUrlTest, SubstitutesPage) {
  EXPECT_EQ(FormatSearchUrl(Db("d", "x/{QUERY}/p{PAGE}"), Q({"a"}), 3), "x/a/p3");
  EXPECT_EQ(FormatSearchUrl(Db("d", "x/{QUERY}"), Q({"{PAGE}"}), 3),
            "x/%7BPAGE%7D");
}

TEST(ExtractLinksTest, ResolvesAgainstBase) {
  const FetchedPage page{"db.example",
                         R"(<a href="/doc/1">one</a> .. <a href="/doc/2">two</a>)",
                         0};
  EXPECT_THAT(ExtractLinks(page, R"re(href="([^"]+)")re", "db.example"),
              ElementsAre("db.example/doc/1", "db.example/doc/2"));
}

TEST(ExtractLinksTest, NoMatchesAndDuplicates) {
  const FetchedPage empty{"u", "<p>nothing here</p>", 0};
  EXPECT_THAT(ExtractLinks(empty, R"re(href="([^"]+)")re", "http://h/"), IsEmpty());
  const FetchedPage twice{"u", R"(<a href="a">1</a><a href="a">2</a><a href="b">)", 0};
  EXPECT_THAT(ExtractLinks(twice, R"re(href="([^"]+)")re", "http://h/x/"),
              ElementsAre("http://h/x/a", "http://h/x/b"));
}

TEST(ExtractLinksTest, DecodesEntitiesInHref) {
  const FetchedPage page{"u", R"(<a href="s?a=1&amp;b=2">)", 0};
  EXPECT_THAT(ExtractLinks(page, R"re(href="([^"]+)")re", "http://h/"),
              ElementsAre("http://h/s?a=1&b=2"));
}

TEST(ExtractLinksTest, BadPatternThrows) {
  const FetchedPage page{"u", "x", 0};
  try {
    ExtractLinks(page, "(", "http://h/");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPattern);
  }
}

TEST(DefaultFetcherTest, ReadsFileUrlsRelativeToFixtureRoot) {
  TempDir dir;
  dir.Write("ew/results1.html", "<p>hello</p>");
  ManualClock clock;
  DefaultFetcher fetcher(clock, {std::string(kDefaultUserAgent), dir.path(), false});
  const FetchedPage page = fetcher.Fetch("file:ew/results1.html", 0, 1000);
  EXPECT_EQ(page.body, "<p>hello</p>");
  EXPECT_EQ(page.url, "file:ew/results1.html");

  const std::string absolute = "file://" + (dir.path() / "ew/results1.html").string();
  EXPECT_EQ(fetcher.Fetch(absolute, 0, 1000).body, "<p>hello</p>");

  try {
    fetcher.Fetch("file:ew/missing.html", 0, 1000);
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFetchFailed);
    EXPECT_TRUE(e.not_found());
  }
}

TEST(DefaultFetcherTest, NetworkDisabledRefusesHttp) {
  ManualClock clock;
  DefaultFetcher fetcher(clock, {std::string(kDefaultUserAgent), ".", false});
  try {
    fetcher.Fetch("http://127.0.0.1:9/", 0, 100);
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFetchFailed);
    EXPECT_EQ(e.status(), 0);
  }
}

TEST(DefaultFetcherTest, HttpStatusUserAgentAndBody) {
  LocalServer local;
  std::string seen_agent;
  local.server().Get("/ok", [&](const httplib::Request& req, httplib::Response& res) {
    seen_agent = req.get_header_value("User-Agent");
    res.set_content("caf\xC3\xA9 \xFF", "text/html");
  });
  local.server().Get("/gone", [](const httplib::Request&, httplib::Response& res) {
    res.status = 404;
  });
  local.server().Get("/boom", [](const httplib::Request&, httplib::Response& res) {
    res.status = 503;
  });
  local.server().Get("/moved", [](const httplib::Request&, httplib::Response& res) {
    res.set_redirect("/ok");
  });

  SteadyClock clock;
  DefaultFetcher fetcher(clock, {"test-agent/2", ".", true});
  EXPECT_EQ(fetcher.Fetch(local.Url("/ok"), 0, 2000).body, "café �");
  EXPECT_EQ(seen_agent, "test-agent/2");
  EXPECT_EQ(fetcher.Fetch(local.Url("/moved"), 0, 2000).body, "café �");

  try {
    fetcher.Fetch(local.Url("/gone"), 0, 2000);
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFetchFailed);
    EXPECT_EQ(e.status(), 404);
  }
  try {
    fetcher.Fetch(local.Url("/boom"), 0, 2000);
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.status(), 503);
    EXPECT_FALSE(e.not_found());
  }
}

TEST(DefaultFetcherTest, UnresponsiveHostTimesOut) {
  BlackHole hole;
  SteadyClock clock;
  DefaultFetcher fetcher(clock, {});
  const auto start = std::chrono::steady_clock::now();
  try {
    fetcher.Fetch(hole.Url(), 0, 100);
    FAIL();
  } catch (const FetchError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFetchTimeout);
  }
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(3));
}

TEST(RateLimiterTest, SecondStartIsDelayedOnInjectedClock) {
  ManualClock clock(10.0);
  RateLimiter limiter(clock);
  const double first = limiter.Acquire("h", 200);
  const double second = limiter.Acquire("h", 200);
  const double other = limiter.Acquire("g", 200);
  EXPECT_DOUBLE_EQ(first, 10.0);
  EXPECT_GE(second - first, 0.2);
  EXPECT_GE(clock.Now(), second);
  EXPECT_LE(other, clock.Now());
}

TEST(RateLimiterTest, ConcurrentCallersAreSpacedOut) {
  ManualClock clock;
  RateLimiter limiter(clock);
  std::vector<double> starts(6);
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) {
    threads.emplace_back([&, i] { starts[i] = limiter.Acquire("h", 50); });
  }
  for (auto& t : threads) t.join();
  std::sort(starts.begin(), starts.end());
  for (std::size_t i = 1; i < starts.size(); ++i) {
    EXPECT_GE(starts[i] - starts[i - 1], 0.05 - 1e-12);
  }
}

TEST(DefaultFetcherTest, RateLimitAppliesPerHostOverHttp) {
  LocalServer local;
  local.server().Get("/a", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("a", "text/plain");
  });
  ManualClock clock;
  DefaultFetcher fetcher(clock, {});
  const FetchedPage one = fetcher.Fetch(local.Url("/a"), 200, 2000);
  const FetchedPage two = fetcher.Fetch(local.Url("/a"), 200, 2000);
  EXPECT_GE(two.fetched_at - one.fetched_at, 0.2);
}

TEST(RunMdsTest, FixtureColumbusLinkSetSizes) {
  const auto catalog = LoadCatalog(COMPSEARCH_FIXTURES_DIR "/catalog.json");
  SteadyClock clock;
  DefaultFetcher fetcher(clock, {std::string(kDefaultUserAgent),
                                 COMPSEARCH_FIXTURES_DIR, false});
  const MdsResult result = RunMds(Q({"christopher", "columbus"}), catalog,
                                  fetcher, clock, clock.Now());
  ASSERT_THAT(result.link_sets, SizeIs(4));
  std::vector<std::size_t> sizes;
  for (const LinkSet& ls : result.link_sets) {
    sizes.push_back(ls.urls.size());
    EXPECT_EQ(ls.status, LinkSetStatus::kOk);
  }
  EXPECT_THAT(sizes, ElementsAre(33, 46, 8, 54));
  EXPECT_THAT(result.diagnostics, IsEmpty());
}

TEST(RunMdsTest, EmptyResultPage) {
  FakeFetcher fetcher;
  fetcher.bodies["s/a"] = "<html>no results</html>";
  ManualClock clock;
  const DatabaseDescriptor d = Db("only", "s/{QUERY}");
  const MdsResult r = RunMds(Q({"a"}), std::vector{d}, fetcher, clock, 0);
  ASSERT_THAT(r.link_sets, SizeIs(1));
  EXPECT_THAT(r.link_sets[0].urls, IsEmpty());
  EXPECT_EQ(r.link_sets[0].status, LinkSetStatus::kOk);
}

TEST(RunMdsTest, OutputFollowsDescriptorOrderNotCompletionOrder) {
  FakeFetcher fetcher;
  fetcher.bodies["http://slow/a"] = Hits({"/1"});
  fetcher.bodies["http://fast/a"] = Hits({"/2"});
  fetcher.delays["http://slow/a"] = std::chrono::milliseconds(150);
  SteadyClock clock;
  const std::vector<DatabaseDescriptor> dbs = {Db("slow", "http://slow/{QUERY}"),
                                               Db("fast", "http://fast/{QUERY}")};
  const double start = clock.Now();
  const MdsResult r = RunMds(Q({"a"}), dbs, fetcher, clock, start);
  ASSERT_THAT(r.link_sets, SizeIs(2));
  EXPECT_EQ(r.link_sets[0].database_name, "slow");
  EXPECT_EQ(r.link_sets[1].database_name, "fast");
  EXPECT_THAT(r.link_sets[0].urls, ElementsAre("http://slow/1"));
  EXPECT_GT(r.link_sets[0].completed_at_seconds, r.link_sets[1].completed_at_seconds);
}

TEST(RunMdsTest, PaginationStopsWhenPagesRunOutOrRepeat) {
  FakeFetcher fetcher;
  fetcher.bodies["h://x/a/1"] = Hits({"/1", "/2"});
  fetcher.bodies["h://x/a/2"] = Hits({"/2", "/3"});
  fetcher.bodies["h://x/a/3"] = Hits({"/3", "/1"});
  fetcher.bodies["h://x/a/4"] = Hits({"/4"});
  ManualClock clock;
  const MdsResult r = RunMds(Q({"a"}), std::vector{Db("x", "h://x/{QUERY}/{PAGE}", 9)},
                             fetcher, clock, 0);
  EXPECT_THAT(r.link_sets[0].urls, ElementsAre("h://x/1", "h://x/2", "h://x/3"));
  EXPECT_THAT(fetcher.requested(), SizeIs(3));

  FakeFetcher short_fetcher;
  short_fetcher.bodies["h://x/a/1"] = Hits({"/1"});
  const MdsResult s = RunMds(Q({"a"}), std::vector{Db("x", "h://x/{QUERY}/{PAGE}", 9)},
                             short_fetcher, clock, 0);
  EXPECT_THAT(s.link_sets[0].urls, ElementsAre("h://x/1"));
  EXPECT_THAT(s.diagnostics, IsEmpty());

  FakeFetcher limited;
  for (int p = 1; p <= 5; ++p) {
    limited.bodies["h://x/a/" + std::to_string(p)] =
        Hits({("/" + std::to_string(p)).c_str()});
  }
  const MdsResult l = RunMds(Q({"a"}), std::vector{Db("x", "h://x/{QUERY}/{PAGE}", 2)},
                             limited, clock, 0);
  EXPECT_THAT(l.link_sets[0].urls, SizeIs(2));
}

TEST(RunMdsTest, FailuresBecomeDiagnostics) {
  FakeFetcher fetcher;
  fetcher.failures["h://down/a"] = 503;
  fetcher.bodies["h://up/a"] = Hits({"/1"});
  ManualClock clock;
  const std::vector<DatabaseDescriptor> dbs = {
      Db("down", "h://down/{QUERY}"), Db("missing", "h://missing/{QUERY}"),
      Db("up", "h://up/{QUERY}")};
  const MdsResult r = RunMds(Q({"a"}), dbs, fetcher, clock, 0);
  ASSERT_THAT(r.link_sets, SizeIs(3));
  EXPECT_EQ(r.link_sets[0].status, LinkSetStatus::kFailed);
  EXPECT_EQ(r.link_sets[1].status, LinkSetStatus::kNoResults);
  EXPECT_EQ(r.link_sets[2].status, LinkSetStatus::kOk);
  EXPECT_THAT(r.link_sets[0].urls, IsEmpty());
  EXPECT_FALSE(r.diagnostics.empty());
  for (const Diagnostic& d : r.diagnostics) EXPECT_NE(d.database, "up");
}

}  // namespace
}  // namespace compsearch
