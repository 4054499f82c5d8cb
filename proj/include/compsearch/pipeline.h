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

// End-to-end run: query -> multi-database search -> extraction -> PageRank
// -> telemetry -> report files.

#ifndef COMPSEARCH_PIPELINE_H_
#define COMPSEARCH_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>

#include "compsearch/clock.h"
#include "compsearch/connector_mds.h"
#include "compsearch/extraction_rule.h"
#include "compsearch/query_model.h"
#include "compsearch/ranker_pagerank.h"
#include "compsearch/report_emitter.h"

namespace compsearch {

enum class RunMode { kLive, kFixture };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAllFailed = 3;

struct RunConfig {
  std::string query_text;
  std::set<std::string> topics;
  std::filesystem::path catalog_path = "fixtures/catalog.json";
  std::set<TargetKind> extract_kinds = {TargetKind::kCitation,
                                        TargetKind::kExcerpt,
                                        TargetKind::kImage};
  double min_relevance = kDefaultMinRelevance;
  double damping = kDefaultDamping;
  std::filesystem::path out_path = "compiled_report";
  RunMode mode = RunMode::kLive;
  std::optional<std::filesystem::path> replay_timings_path;
  std::optional<std::filesystem::path> plot_path;
  std::optional<std::filesystem::path> stop_words_path;
  // Defaults to the catalog's directory.
  std::optional<std::filesystem::path> fixture_root;
  std::int64_t timeout_ms = kDefaultTimeoutMs;
  std::string user_agent = std::string(kDefaultUserAgent);
  // Fixed report timestamp; fixture runs default to the Unix epoch so their
  // output is reproducible.
  std::optional<std::int64_t> generated_at_unix;
};

// Throws Error(kConfig) for out-of-range settings.
void ValidateRunConfig(const RunConfig& config);

// Reads "<database> <seconds>" lines ('#' starts a comment) into a schedule.
// Every name must exist in `catalog` (Error(kUnknownDatabase)); malformed
// lines raise Error(kConfig). An empty file yields an empty schedule.
std::map<std::string, double> ReplayTimings(
    const std::filesystem::path& path,
    std::span<const DatabaseDescriptor> catalog);

struct RunOutcome {
  int exit_code = kExitOk;
  std::optional<CompiledReport> report;
  std::filesystem::path html_path;
  std::filesystem::path json_path;
  std::optional<std::filesystem::path> svg_path;
};

// Executes the whole pipeline and writes <out>.html and <out>.json (and the
// plot if requested). Exit codes: 0 success (diagnostics allowed), 2
// configuration error with no files written, 3 every database failed (the
// report is still written). Human-readable messages go to `log`.
RunOutcome Run(const RunConfig& config, std::ostream& log);

// Same, with caller-supplied fetcher and clock (tests).
RunOutcome Run(const RunConfig& config, std::ostream& log,
               PageFetcher* fetcher, Clock* clock);

}  // namespace compsearch

#endif  // COMPSEARCH_PIPELINE_H_
