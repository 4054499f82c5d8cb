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

// Multi-database search: format the query into each database's own search
// URL, walk its result pages, and harvest result links. Databases run
// concurrently; each one is timestamped when its last result page has been
// parsed.

#ifndef COMPSEARCH_CONNECTOR_MDS_H_
#define COMPSEARCH_CONNECTOR_MDS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compsearch/clock.h"
#include "compsearch/query_model.h"

namespace compsearch {

struct FetchedPage {
  std::string url;
  std::string body;         // valid UTF-8
  double fetched_at = 0;    // clock time at which the request began
};

// A per-URL problem that did not abort the run.
struct Diagnostic {
  std::string database;
  std::string url;
  std::string reason;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

enum class LinkSetStatus {
  kOk,
  kNoResults,  // the search page does not exist (404 / missing fixture)
  kFailed,     // every fetch failed for another reason
};

struct LinkSet {
  std::string database_name;
  std::vector<std::string> urls;  // absolute, unique, harvest order
  double completed_at_seconds = 0;
  LinkSetStatus status = LinkSetStatus::kOk;
};

inline constexpr std::string_view kDefaultUserAgent =
    "compile-search/1.0 (+https://example.invalid/compile-search)";
inline constexpr std::int64_t kDefaultTimeoutMs = 10000;

// Replaces {QUERY} with the percent-encoded keywords joined by '+', and
// {PAGE} (if present) with `page`.
std::string FormatSearchUrl(const DatabaseDescriptor& descriptor,
                            const Query& query, int page = 1);

// Capture group 1 of every non-overlapping match, in document order,
// resolved against `base_url` and deduplicated (first occurrence wins).
// Throws Error(kInvalidPattern).
std::vector<std::string> ExtractLinks(const FetchedPage& page,
                                      std::string_view link_pattern,
                                      std::string_view base_url);

// Spaces out request starts per host. Acquire() reserves the next slot under
// a lock, then sleeps on the injected clock until it arrives, so concurrent
// callers for one host are serialized at least `min_interval_ms` apart.
class RateLimiter {
 public:
  explicit RateLimiter(Clock& clock) : clock_(clock) {}

  // Returns the clock time at which the caller may start.
  double Acquire(const std::string& host, std::int64_t min_interval_ms);

 private:
  Clock& clock_;
  std::mutex mu_;
  std::map<std::string, double> last_start_;
};

class PageFetcher {
 public:
  virtual ~PageFetcher() = default;

  // Throws FetchError with kFetchTimeout or kFetchFailed.
  virtual FetchedPage Fetch(const std::string& url, std::int64_t rate_limit_ms,
                            std::int64_t timeout_ms) = 0;
};

struct FetchOptions {
  std::string user_agent = std::string(kDefaultUserAgent);
  // Relative `file:` paths resolve against this directory.
  std::filesystem::path fixture_root = ".";
  // When false only `file:` URLs are served; anything else fails without
  // touching the network.
  bool allow_network = true;
};

// `file:` URLs are read from disk; http(s) URLs are fetched with a GET that
// follows redirects. Bodies are lossily decoded to UTF-8.
class DefaultFetcher final : public PageFetcher {
 public:
  DefaultFetcher(Clock& clock, FetchOptions options)
      : clock_(clock), options_(std::move(options)), limiter_(clock) {}

  FetchedPage Fetch(const std::string& url, std::int64_t rate_limit_ms,
                    std::int64_t timeout_ms) override;

  const FetchOptions& options() const { return options_; }

 private:
  FetchedPage FetchFile(const std::string& url, double started);
  FetchedPage FetchHttp(const std::string& url, std::int64_t timeout_ms,
                        double started);

  Clock& clock_;
  FetchOptions options_;
  RateLimiter limiter_;
};

struct MdsResult {
  std::vector<LinkSet> link_sets;  // descriptor order
  std::vector<Diagnostic> diagnostics;
};

// Runs every database's search concurrently. Result pages 1..limit are
// walked until a page yields no new links or a later page does not exist.
// Failures are recorded as diagnostics and never abort the run.
MdsResult RunMds(const Query& query,
                 std::span<const DatabaseDescriptor> descriptors,
                 PageFetcher& fetcher, Clock& clock, double run_start,
                 std::int64_t timeout_ms = kDefaultTimeoutMs);

}  // namespace compsearch

#endif  // COMPSEARCH_CONNECTOR_MDS_H_
