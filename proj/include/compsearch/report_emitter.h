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

#ifndef COMPSEARCH_REPORT_EMITTER_H_
#define COMPSEARCH_REPORT_EMITTER_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "compsearch/connector_mds.h"
#include "compsearch/query_model.h"
#include "compsearch/ranker_pagerank.h"
#include "compsearch/saea_extractor.h"
#include "compsearch/telemetry_ipf.h"

namespace compsearch {

struct RankedRecord {
  SourceRecord record;
  double pagerank = 0;
  double pagerank_percent = 0;
};

struct TelemetrySection {
  std::vector<TelemetryPoint> points;  // raw, one per database
  std::int64_t total_sources = 0;
  double total_time_seconds = 0;
  // Absent when the points cannot be fitted (fewer than two databases, or
  // coincident completion times).
  std::optional<RunMetrics> metrics;
  std::optional<EfficiencyCandidates> efficiency;
};

// Builds the telemetry section, fitting S(t) when the points allow it.
TelemetrySection SummarizeTelemetry(std::span<const TelemetryPoint> points);

struct CompiledReport {
  Query query;
  std::vector<std::string> databases;  // descriptors used in the run
  std::vector<RankedRecord> records;
  TelemetrySection telemetry;
  std::vector<Diagnostic> diagnostics;
  std::string generated_at;  // ISO-8601, UTC
};

// Attaches each record's PageRank (0 when its URL is not a graph node) and
// stable-sorts by combined score desc, PageRank desc, URL asc.
std::vector<RankedRecord> OrderRecords(std::span<const SourceRecord> records,
                                       const LinkGraph& graph,
                                       const RankVector& ranks);

// Self-contained HTML page; every piece of extracted text is escaped.
std::string RenderHtml(const CompiledReport& report);

nlohmann::json ReportToJson(const CompiledReport& report);

// Sorted keys, no insignificant whitespace, doubles with 17 significant
// digits, non-finite numbers as null.
std::string RenderCanonicalJson(const nlohmann::json& value);

std::string RenderJson(const CompiledReport& report);

// S(t) and E(t) over the restricted domain as an SVG line chart.
std::string RenderSvgPlot(const RunMetrics& metrics);

// ISO-8601 "YYYY-MM-DDTHH:MM:SSZ" for seconds since the Unix epoch.
std::string FormatUtcTimestamp(std::int64_t unix_seconds);

}  // namespace compsearch

#endif  // COMPSEARCH_REPORT_EMITTER_H_
