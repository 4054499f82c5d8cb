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

#include "compsearch/saea_extractor.h"

#include <algorithm>
#include <future>
#include <limits>
#include <unordered_map>

#include "compsearch/error.h"
#include "compsearch/text.h"
#include "compsearch/url.h"
#include "pattern.h"

namespace compsearch {
namespace {

std::size_t CountSubstring(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

std::string CleanText(std::string_view raw) { return HtmlToText(raw); }

struct DatabaseOutcome {
  std::vector<SourceRecord> records;
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, std::string> pages;
  TelemetryPoint point;
};

DatabaseOutcome ExtractOneDatabase(const LinkSet* link_set,
                                   const DatabaseDescriptor& d,
                                   const Query& query,
                                   const SaeaOptions& options,
                                   PageFetcher& fetcher) {
  DatabaseOutcome out;
  if (link_set == nullptr) return out;
  for (const std::string& url : link_set->urls) {
    FetchedPage page;
    try {
      page = fetcher.Fetch(url, d.rate_limit_ms, options.timeout_ms);
    } catch (const FetchError& e) {
      out.diagnostics.push_back({d.name, url, e.what()});
      continue;
    }
    std::optional<SourceRecord> record =
        AnalyzeSource(page, d, query, options.requested_kinds,
                      options.min_relevance, &out.diagnostics);
    if (!record) continue;
    out.pages.emplace(record->url, std::move(page.body));
    out.records.push_back(std::move(*record));
  }
  return out;
}

}  // namespace

double RelevanceScore(std::string_view body, const Query& query,
                      MatchMode mode) {
  if (mode == MatchMode::kSubstring) {
    const std::string lowered = ToLowerAscii(body);
    std::size_t total = 0;
    for (const std::string& k : query.keywords) {
      total += CountSubstring(lowered, k);
    }
    return static_cast<double>(total);
  }
  std::unordered_map<std::string_view, std::size_t> wanted;
  for (const std::string& k : query.keywords) wanted.emplace(k, 0);
  std::size_t total = 0;
  for (const std::string& token : Tokenize(body)) {
    if (wanted.contains(token)) ++total;
  }
  return static_cast<double>(total);
}

double ProximityScore(std::string_view body, const Query& query) {
  if (query.keywords.empty()) return 0;
  std::unordered_map<std::string_view, std::size_t> slot;
  for (const std::string& k : query.keywords) slot.emplace(k, slot.size());
  const std::size_t needed = slot.size();

  // (token position, keyword slot) for keyword tokens only.
  std::vector<std::pair<std::size_t, std::size_t>> hits;
  const std::vector<std::string> tokens = Tokenize(body);
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    if (auto it = slot.find(tokens[pos]); it != slot.end()) {
      hits.emplace_back(pos, it->second);
    }
  }

  std::vector<std::size_t> in_window(needed, 0);
  std::size_t covered = 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::size_t left = 0;
  for (std::size_t right = 0; right < hits.size(); ++right) {
    if (in_window[hits[right].second]++ == 0) ++covered;
    while (covered == needed) {
      best = std::min(best, hits[right].first - hits[left].first + 1);
      if (--in_window[hits[left].second] == 0) --covered;
      ++left;
    }
  }
  if (best == std::numeric_limits<std::size_t>::max()) return 0;
  return 1.0 / static_cast<double>(best);
}

std::vector<Component> ApplyRule(std::string_view body,
                                 const ExtractionRule& rule,
                                 std::string_view base_url) {
  const boost::regex re = internal::CompilePattern(rule.pattern);
  if (rule.capture_group < 1 ||
      static_cast<std::size_t>(rule.capture_group) > re.mark_count()) {
    throw Error(ErrorCode::kInvalidPattern,
                "pattern '" + rule.pattern + "' has no capture group " +
                    std::to_string(rule.capture_group));
  }
  const std::size_t cap =
      rule.max_matches.value_or(std::numeric_limits<std::size_t>::max());
  std::vector<Component> out;
  if (cap == 0) return out;
  internal::ForEachMatch(body, re, [&](const auto& m) {
    const std::string raw = internal::GroupText(m, rule.capture_group);
    std::string value;
    if (rule.target_kind == TargetKind::kImage) {
      const std::string src = Trim(DecodeHtmlEntities(raw));
      if (!src.empty()) value = ResolveUrl(base_url, src);
      if (!IsAbsoluteUrl(value)) value.clear();
    } else {
      value = CleanText(raw);
    }
    if (!value.empty()) out.push_back({rule.target_kind, std::move(value)});
    return out.size() < cap;
  });
  return out;
}

std::optional<std::string> ExtractCitation(std::string_view body,
                                           std::string_view citation_pattern) {
  const boost::regex re = internal::CompilePattern(citation_pattern);
  std::optional<std::string> citation;
  internal::ForEachMatch(body, re, [&](const auto& m) {
    std::string text = CleanText(internal::GroupText(m, 1));
    if (text.empty()) return true;
    citation = std::move(text);
    return false;
  });
  return citation;
}

std::optional<SourceRecord> AnalyzeSource(
    const FetchedPage& page, const DatabaseDescriptor& descriptor,
    const Query& query, const std::set<TargetKind>& requested_kinds,
    double min_relevance, std::vector<Diagnostic>* diagnostics) {
  SourceRecord record;
  record.url = page.url;
  record.database_name = descriptor.name;

  const std::string text = HtmlToText(page.body);
  record.relevance_score = RelevanceScore(text, query);
  if (record.relevance_score < min_relevance) return std::nullopt;
  record.proximity_score = ProximityScore(text, query);

  try {
    for (const ExtractionRule& rule : descriptor.extraction_rules) {
      if (!requested_kinds.contains(rule.target_kind)) continue;
      for (Component& c : ApplyRule(page.body, rule, page.url)) {
        record.components.push_back(std::move(c));
      }
    }
    if (!descriptor.citation_pattern.empty()) {
      record.citation = ExtractCitation(page.body, descriptor.citation_pattern);
    }
  } catch (const Error& e) {
    if (diagnostics) diagnostics->push_back({descriptor.name, page.url, e.what()});
    return std::nullopt;
  }

  const bool has_citation_component = std::any_of(
      record.components.begin(), record.components.end(),
      [](const Component& c) { return c.kind == TargetKind::kCitation; });
  if (record.citation && requested_kinds.contains(TargetKind::kCitation) &&
      !has_citation_component) {
    record.components.insert(record.components.begin(),
                             {TargetKind::kCitation, *record.citation});
  }
  if (record.components.empty()) return std::nullopt;
  return record;
}

SaeaResult RunSaea(std::span<const LinkSet> link_sets,
                   std::span<const DatabaseDescriptor> descriptors,
                   const Query& query, const SaeaOptions& options,
                   PageFetcher& fetcher, Clock& clock, double run_start) {
  std::vector<std::future<DatabaseOutcome>> tasks;
  tasks.reserve(descriptors.size());
  for (const DatabaseDescriptor& d : descriptors) {
    const LinkSet* link_set = nullptr;
    for (const LinkSet& ls : link_sets) {
      if (ls.database_name == d.name) link_set = &ls;
    }
    tasks.push_back(std::async(std::launch::async, [&, dp = &d, link_set] {
      DatabaseOutcome out;
      try {
        out = ExtractOneDatabase(link_set, *dp, query, options, fetcher);
      } catch (const std::exception& e) {
        out.diagnostics.push_back({dp->name, "", e.what()});
      }
      out.point.t = clock.CompletionOffset(dp->name, run_start);
      out.point.y = static_cast<std::int64_t>(out.records.size());
      return out;
    }));
  }

  SaeaResult result;
  for (auto& task : tasks) {
    DatabaseOutcome out = task.get();
    result.points.push_back(out.point);
    for (SourceRecord& r : out.records) result.records.push_back(std::move(r));
    for (Diagnostic& diag : out.diagnostics) {
      result.diagnostics.push_back(std::move(diag));
    }
    result.pages.merge(out.pages);
  }
  return result;
}

}  // namespace compsearch
