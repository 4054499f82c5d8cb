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

#include "compsearch/connector_mds.h"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <unordered_set>

#include "compsearch/error.h"
#include "compsearch/text.h"
#include "compsearch/url.h"
#include "pattern.h"

namespace compsearch {
namespace {

void ReplaceAll(std::string& text, std::string_view from, std::string_view to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
}

struct DatabaseOutcome {
  LinkSet link_set;
  std::vector<Diagnostic> diagnostics;
};

DatabaseOutcome SearchOneDatabase(const Query& query,
                                  const DatabaseDescriptor& d,
                                  PageFetcher& fetcher, Clock& clock,
                                  double run_start, std::int64_t timeout_ms) {
  DatabaseOutcome out;
  out.link_set.database_name = d.name;
  const bool paged =
      d.query_url_template.find(kPagePlaceholder) != std::string::npos;
  const int pages = paged ? d.result_page_limit : 1;

  std::unordered_set<std::string> seen;
  int ok_fetches = 0;
  bool search_missing = false;
  std::string first_url;
  for (int page = 1; page <= pages; ++page) {
    const std::string url = FormatSearchUrl(d, query, page);
    if (page == 1) first_url = url;
    FetchedPage fetched;
    try {
      fetched = fetcher.Fetch(url, d.rate_limit_ms, timeout_ms);
    } catch (const FetchError& e) {
      // A missing page after the first one just means the results ran out.
      if (page > 1 && e.not_found()) break;
      if (page == 1 && e.not_found()) search_missing = true;
      out.diagnostics.push_back({d.name, url, e.what()});
      break;
    }
    ++ok_fetches;

    std::vector<std::string> links;
    try {
      links = ExtractLinks(fetched, d.link_pattern, fetched.url);
    } catch (const Error& e) {
      out.diagnostics.push_back({d.name, url, e.what()});
      break;
    }
    const std::size_t before = out.link_set.urls.size();
    for (std::string& link : links) {
      if (seen.insert(link).second) out.link_set.urls.push_back(std::move(link));
    }
    if (out.link_set.urls.size() == before) break;
  }
  out.link_set.completed_at_seconds = std::max(0.0, clock.Now() - run_start);

  if (ok_fetches > 0) {
    out.link_set.status = LinkSetStatus::kOk;
  } else {
    out.link_set.status =
        search_missing ? LinkSetStatus::kNoResults : LinkSetStatus::kFailed;
    out.diagnostics.push_back(
        {d.name, first_url,
         search_missing ? "search page not found; database contributes no links"
                        : "every fetch failed; database contributes no links"});
  }
  return out;
}

std::string ReadWholeFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string FormatSearchUrl(const DatabaseDescriptor& descriptor,
                            const Query& query, int page) {
  std::string terms;
  for (const std::string& keyword : query.keywords) {
    if (!terms.empty()) terms += '+';
    terms += PercentEncode(keyword);
  }
  std::string url = descriptor.query_url_template;
  ReplaceAll(url, kPagePlaceholder, std::to_string(page));
  // {QUERY} last so that encoded terms can never be mistaken for {PAGE}.
  const std::size_t pos = url.find(kQueryPlaceholder);
  if (pos != std::string::npos) url.replace(pos, kQueryPlaceholder.size(), terms);
  return url;
}

std::vector<std::string> ExtractLinks(const FetchedPage& page,
                                      std::string_view link_pattern,
                                      std::string_view base_url) {
  const boost::regex re = internal::CompilePattern(link_pattern);
  std::vector<std::string> links;
  std::unordered_set<std::string> seen;
  internal::ForEachMatch(page.body, re, [&](const auto& m) {
    const std::string raw = Trim(DecodeHtmlEntities(internal::GroupText(m, 1)));
    if (raw.empty()) return true;
    std::string url = ResolveUrl(base_url, raw);
    if (seen.insert(url).second) links.push_back(std::move(url));
    return true;
  });
  return links;
}

double RateLimiter::Acquire(const std::string& host,
                            std::int64_t min_interval_ms) {
  double start = 0;
  {
    std::lock_guard lock(mu_);
    start = clock_.Now();
    if (auto it = last_start_.find(host); it != last_start_.end()) {
      const double interval = static_cast<double>(min_interval_ms) / 1000.0;
      double earliest = it->second + interval;
      while (earliest - it->second < interval) {
        earliest = std::nextafter(earliest, HUGE_VAL);
      }
      start = std::max(start, earliest);
    }
    last_start_[host] = start;
  }
  clock_.SleepUntil(start);
  return start;
}

FetchedPage DefaultFetcher::Fetch(const std::string& url,
                                  std::int64_t rate_limit_ms,
                                  std::int64_t timeout_ms) {
  if (timeout_ms <= 0) {
    throw FetchError(ErrorCode::kFetchFailed, 0, "timeout must be positive");
  }
  const UrlParts parts = SplitUrl(url);
  if (parts.scheme == "file") return FetchFile(url, clock_.Now());
  if (parts.scheme != "http" && parts.scheme != "https") {
    throw FetchError(ErrorCode::kFetchFailed, 0,
                     "unsupported URL scheme in '" + url + "'");
  }
  if (!options_.allow_network) {
    throw FetchError(ErrorCode::kFetchFailed, 0,
                     "network access disabled (fixture mode): " + url);
  }
  const double started =
      rate_limit_ms > 0 ? limiter_.Acquire(UrlHost(url), rate_limit_ms)
                        : clock_.Now();
  return FetchHttp(url, timeout_ms, started);
}

FetchedPage DefaultFetcher::FetchFile(const std::string& url, double started) {
  UrlParts parts = SplitUrl(url);
  std::string path = PercentDecode(parts.path);
  if (parts.has_authority && !parts.authority.empty() &&
      parts.authority != "localhost") {
    throw FetchError(ErrorCode::kFetchFailed, 0,
                     "remote file URL not supported: " + url);
  }
  std::filesystem::path fs_path(path);
  if (fs_path.is_relative()) fs_path = options_.fixture_root / fs_path;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(fs_path, ec)) {
    throw FetchError(ErrorCode::kFetchFailed, 404,
                     "no such fixture file: " + fs_path.string());
  }
  return FetchedPage{url, SanitizeUtf8(ReadWholeFile(fs_path)), started};
}

FetchedPage DefaultFetcher::FetchHttp(const std::string& url,
                                      std::int64_t timeout_ms, double started) {
  const UrlParts parts = SplitUrl(url);
  httplib::Client client(parts.scheme + "://" + parts.authority);
  const auto timeout = std::chrono::milliseconds(timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_follow_location(true);
  client.set_url_encode(false);
  client.set_default_headers({{"User-Agent", options_.user_agent}});

  std::string target = parts.path.empty() ? "/" : parts.path;
  target += parts.query;

  const auto wall_start = std::chrono::steady_clock::now();
  httplib::Result res = client.Get(target);
  if (!res) {
    const httplib::Error err = res.error();
    const auto waited = std::chrono::steady_clock::now() - wall_start;
    const bool timed_out =
        err == httplib::Error::ConnectionTimeout ||
        ((err == httplib::Error::Read || err == httplib::Error::Connection) &&
         waited >= timeout * 9 / 10);
    if (timed_out) {
      throw FetchError(ErrorCode::kFetchTimeout, 0,
                       "no response within " + std::to_string(timeout_ms) +
                           " ms: " + url);
    }
    throw FetchError(ErrorCode::kFetchFailed, 0,
                     httplib::to_string(err) + ": " + url);
  }
  if (res->status < 200 || res->status >= 300) {
    throw FetchError(ErrorCode::kFetchFailed, res->status,
                     "HTTP " + std::to_string(res->status) + ": " + url);
  }
  return FetchedPage{url, SanitizeUtf8(res->body), started};
}

MdsResult RunMds(const Query& query,
                 std::span<const DatabaseDescriptor> descriptors,
                 PageFetcher& fetcher, Clock& clock, double run_start,
                 std::int64_t timeout_ms) {
  std::vector<std::future<DatabaseOutcome>> tasks;
  tasks.reserve(descriptors.size());
  for (const DatabaseDescriptor& d : descriptors) {
    tasks.push_back(std::async(std::launch::async, [&, dp = &d] {
      try {
        return SearchOneDatabase(query, *dp, fetcher, clock, run_start,
                                 timeout_ms);
      } catch (const std::exception& e) {
        DatabaseOutcome failed;
        failed.link_set.database_name = dp->name;
        failed.link_set.status = LinkSetStatus::kFailed;
        failed.link_set.completed_at_seconds =
            std::max(0.0, clock.Now() - run_start);
        failed.diagnostics.push_back({dp->name, "", e.what()});
        return failed;
      }
    }));
  }

  MdsResult result;
  for (auto& task : tasks) {
    DatabaseOutcome outcome = task.get();
    result.link_sets.push_back(std::move(outcome.link_set));
    for (Diagnostic& diag : outcome.diagnostics) {
      result.diagnostics.push_back(std::move(diag));
    }
  }
  return result;
}

}  // namespace compsearch
