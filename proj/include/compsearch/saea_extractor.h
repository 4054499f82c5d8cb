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

// Source analysis and extraction: open every harvested link, score it
// against the query, drop what is not relevant, and pull out the requested
// components using the owning database's rules.

#ifndef COMPSEARCH_SAEA_EXTRACTOR_H_
#define COMPSEARCH_SAEA_EXTRACTOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compsearch/clock.h"
#include "compsearch/connector_mds.h"
#include "compsearch/extraction_rule.h"
#include "compsearch/query_model.h"
#include "compsearch/telemetry_ipf.h"

namespace compsearch {

struct Component {
  TargetKind kind = TargetKind::kExcerpt;
  std::string value;  // text, or an absolute URL for images

  friend bool operator==(const Component&, const Component&) = default;
};

struct SourceRecord {
  std::string url;
  std::string database_name;
  double relevance_score = 0;
  double proximity_score = 0;
  std::vector<Component> components;
  std::optional<std::string> citation;

  // Ordering key for the report: frequency count plus the proximity term,
  // which is at most 1 and so only refines ties between equal counts.
  double combined_score() const { return relevance_score + proximity_score; }
};

enum class MatchMode {
  kWholeWord,  // token equality after normalization
  kSubstring,  // occurrences inside the lowercased text
};

// Sum over keywords of their occurrence counts in `body`; every keyword has
// weight one.
double RelevanceScore(std::string_view body, const Query& query,
                      MatchMode mode = MatchMode::kWholeWord);

// 1 / w for the shortest token window of `body` containing every keyword, or
// 0 if some keyword never occurs.
double ProximityScore(std::string_view body, const Query& query);

// Up to rule.max_matches capture values in document order. Image values are
// resolved against `base_url`; text values have tags stripped, entities
// decoded and whitespace collapsed. Empty values are skipped.
// Throws Error(kInvalidPattern).
std::vector<Component> ApplyRule(std::string_view body,
                                 const ExtractionRule& rule,
                                 std::string_view base_url);

// First match's capture group 1, cleaned like a text component.
// Throws Error(kInvalidPattern).
std::optional<std::string> ExtractCitation(std::string_view body,
                                           std::string_view citation_pattern);

// Scores the page's visible text. Returns nullopt when relevance is below
// `min_relevance`, when nothing could be extracted, or when a rule fails (the
// failure is appended to `diagnostics` if given).
std::optional<SourceRecord> AnalyzeSource(
    const FetchedPage& page, const DatabaseDescriptor& descriptor,
    const Query& query, const std::set<TargetKind>& requested_kinds,
    double min_relevance, std::vector<Diagnostic>* diagnostics = nullptr);

inline constexpr double kDefaultMinRelevance = 1.0;

struct SaeaOptions {
  std::set<TargetKind> requested_kinds = {
      TargetKind::kCitation, TargetKind::kExcerpt, TargetKind::kImage};
  double min_relevance = kDefaultMinRelevance;
  std::int64_t timeout_ms = kDefaultTimeoutMs;
};

struct SaeaResult {
  std::vector<SourceRecord> records;    // database order, then harvest order
  std::vector<TelemetryPoint> points;   // one per database, database order
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, std::string> pages;  // emitted record URL -> body
};

// Processes databases concurrently and each database's links sequentially.
// Each database's telemetry point is (clock.CompletionOffset(name,
// run_start), number of records it emitted). Link sets are matched to
// descriptors by name.
SaeaResult RunSaea(std::span<const LinkSet> link_sets,
                   std::span<const DatabaseDescriptor> descriptors,
                   const Query& query, const SaeaOptions& options,
                   PageFetcher& fetcher, Clock& clock, double run_start);

}  // namespace compsearch

#endif  // COMPSEARCH_SAEA_EXTRACTOR_H_
