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

#include "compsearch/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "compsearch/error.h"
#include "compsearch/saea_extractor.h"
#include "compsearch/text.h"
#include "compsearch/url.h"

namespace compsearch {
namespace {

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error(ErrorCode::kConfig, "cannot write " + path.string());
}

std::filesystem::path WithSuffix(const std::filesystem::path& base,
                                 const char* suffix) {
  return std::filesystem::path(base.string() + suffix);
}

std::string TimestampFor(const RunConfig& config) {
  if (config.generated_at_unix) return FormatUtcTimestamp(*config.generated_at_unix);
  if (config.mode == RunMode::kFixture) return FormatUtcTimestamp(0);
  const auto now = std::chrono::system_clock::now();
  return FormatUtcTimestamp(
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
          .count());
}

}  // namespace

void ValidateRunConfig(const RunConfig& config) {
  if (!(config.damping >= 0 && config.damping < 1)) {
    throw Error(ErrorCode::kConfig, "damping must lie in [0, 1)");
  }
  if (!(config.min_relevance >= 0)) {
    throw Error(ErrorCode::kConfig, "min-relevance must be >= 0");
  }
  if (config.extract_kinds.empty()) {
    throw Error(ErrorCode::kConfig, "nothing to extract");
  }
  if (config.timeout_ms <= 0) {
    throw Error(ErrorCode::kConfig, "timeout must be positive");
  }
  if (config.out_path.empty()) {
    throw Error(ErrorCode::kConfig, "output path is empty");
  }
}

std::map<std::string, double> ReplayTimings(
    const std::filesystem::path& path,
    std::span<const DatabaseDescriptor> catalog) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot read " + path.string());
  std::map<std::string, double> schedule;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (Trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string name;
    double seconds = 0;
    std::string extra;
    if (!(fields >> name >> seconds) || (fields >> extra) ||
        !std::isfinite(seconds) || seconds <= 0) {
      throw Error(ErrorCode::kConfig, path.string() + ":" +
                                          std::to_string(line_no) +
                                          ": expected '<database> <seconds>'");
    }
    const bool known = std::any_of(
        catalog.begin(), catalog.end(),
        [&](const DatabaseDescriptor& d) { return d.name == name; });
    if (!known) {
      throw Error(ErrorCode::kUnknownDatabase,
                  "'" + name + "' in " + path.string() + " is not in the catalog");
    }
    schedule[name] = seconds;
  }
  return schedule;
}

RunOutcome Run(const RunConfig& config, std::ostream& log) {
  return Run(config, log, nullptr, nullptr);
}

RunOutcome Run(const RunConfig& config, std::ostream& log,
               PageFetcher* fetcher_override, Clock* clock_override) {
  RunOutcome outcome;
  outcome.html_path = WithSuffix(config.out_path, ".html");
  outcome.json_path = WithSuffix(config.out_path, ".json");

  std::vector<DatabaseDescriptor> selected;
  Query query;
  std::map<std::string, double> schedule;
  try {
    ValidateRunConfig(config);
    const std::vector<DatabaseDescriptor> catalog = LoadCatalog(config.catalog_path);
    const std::set<std::string> stop_words =
        config.stop_words_path ? LoadStopWords(*config.stop_words_path)
                               : DefaultStopWords();
    query = ParseQuery(config.query_text, config.topics, stop_words);
    selected = SelectDatabases(query, catalog);
    if (config.mode == RunMode::kFixture) {
      for (const DatabaseDescriptor& d : selected) {
        if (SplitUrl(d.query_url_template).scheme != "file") {
          throw Error(ErrorCode::kConfig,
                      "fixture mode needs file: URLs, but database '" + d.name +
                          "' searches " + d.query_url_template);
        }
      }
    }
    if (config.replay_timings_path) {
      schedule = ReplayTimings(*config.replay_timings_path, catalog);
      if (schedule.empty()) {
        log << "warning: " << config.replay_timings_path->string()
            << " lists no timings; using the live clock\n";
      }
    }
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    outcome.exit_code = kExitConfig;
    return outcome;
  }

  SteadyClock steady;
  Clock* base_clock = clock_override ? clock_override : &steady;
  std::optional<ReplayClock> replay;
  if (!schedule.empty()) replay.emplace(*base_clock, schedule);
  Clock& clock = replay ? static_cast<Clock&>(*replay) : *base_clock;

  FetchOptions fetch_options;
  fetch_options.user_agent = config.user_agent;
  fetch_options.fixture_root = config.fixture_root
                                   ? *config.fixture_root
                                   : config.catalog_path.parent_path();
  if (fetch_options.fixture_root.empty()) fetch_options.fixture_root = ".";
  fetch_options.allow_network = config.mode == RunMode::kLive;
  DefaultFetcher default_fetcher(clock, fetch_options);
  PageFetcher& fetcher = fetcher_override ? *fetcher_override : default_fetcher;

  const double run_start = clock.Now();
  MdsResult mds =
      RunMds(query, selected, fetcher, clock, run_start, config.timeout_ms);

  SaeaOptions saea_options;
  saea_options.requested_kinds = config.extract_kinds;
  saea_options.min_relevance = config.min_relevance;
  saea_options.timeout_ms = config.timeout_ms;
  SaeaResult saea = RunSaea(mds.link_sets, selected, query, saea_options,
                            fetcher, clock, run_start);

  std::map<std::string, std::string> link_patterns;
  for (const DatabaseDescriptor& d : selected) link_patterns[d.name] = d.link_pattern;
  const LinkGraph graph = BuildLinkGraph(saea.records, saea.pages, link_patterns);
  RankVector ranks;
  if (!graph.nodes.empty()) {
    ranks = PageRank(graph, config.damping);
    if (!ranks.converged) {
      log << "warning: PageRank stopped after " << ranks.iterations_used
          << " iterations without converging\n";
    }
  }

  CompiledReport report;
  report.query = query;
  for (const DatabaseDescriptor& d : selected) report.databases.push_back(d.name);
  report.records = OrderRecords(saea.records, graph, ranks);
  report.telemetry = SummarizeTelemetry(saea.points);
  report.diagnostics = std::move(mds.diagnostics);
  for (Diagnostic& d : saea.diagnostics) report.diagnostics.push_back(std::move(d));
  report.generated_at = TimestampFor(config);

  if (!report.telemetry.metrics) {
    log << "warning: telemetry has " << report.telemetry.points.size()
        << " point(s) without distinct completion times; S(t) not fitted\n";
  }

  try {
    WriteFile(outcome.html_path, RenderHtml(report));
    WriteFile(outcome.json_path, RenderJson(report));
    if (config.plot_path) {
      if (report.telemetry.metrics) {
        WriteFile(*config.plot_path, RenderSvgPlot(*report.telemetry.metrics));
        outcome.svg_path = config.plot_path;
      } else {
        log << "warning: no fitted telemetry, plot skipped\n";
      }
    }
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    outcome.exit_code = kExitConfig;
    return outcome;
  }

  for (const Diagnostic& d : report.diagnostics) {
    log << "diagnostic: [" << d.database << "] " << d.url << ": " << d.reason
        << "\n";
  }
  const bool all_failed = std::all_of(
      mds.link_sets.begin(), mds.link_sets.end(),
      [](const LinkSet& ls) { return ls.status == LinkSetStatus::kFailed; });
  outcome.exit_code = all_failed ? kExitAllFailed : kExitOk;
  outcome.report = std::move(report);
  return outcome;
}

}  // namespace compsearch
