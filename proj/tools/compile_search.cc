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


// compile-search: query several source databases and compile the hits into
// one ranked report.
//
//   compile-search "christopher columbus" --topics exploration \
//       --catalog fixtures/catalog.json --mode fixture \
//       --replay-timings fixtures/timings/christopher_columbus.txt

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "compsearch/error.h"
#include "compsearch/extraction_rule.h"
#include "compsearch/pipeline.h"
#include "compsearch/text.h"

namespace {

std::set<std::string> SplitCsv(const std::string& csv) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    std::string item = compsearch::Trim(csv.substr(start, comma - start));
    if (!item.empty()) out.insert(std::move(item));
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using compsearch::RunConfig;
  using compsearch::RunMode;

  CLI::App app{"Compile search results from several databases into one report"};
  RunConfig config;
  std::string topics;
  std::string extract = "citation,excerpt,image";
  std::string mode = "live";
  std::string catalog = config.catalog_path.string();
  std::string out = config.out_path.string();
  std::string replay, plot, stop_words, fixture_root;

  app.add_option("query", config.query_text, "Search text")->required();
  app.add_option("--topics", topics, "Comma-separated topic tags");
  app.add_option("--catalog", catalog, "Database catalog (JSON)");
  app.add_option("--extract", extract,
                 "Comma-separated kinds: image,citation,excerpt,heading,full_text");
  app.add_option("--min-relevance", config.min_relevance,
                 "Drop sources scoring below this");
  app.add_option("--damping", config.damping, "PageRank damping factor");
  app.add_option("--out", out, "Output path prefix (.html and .json are added)");
  app.add_option("--mode", mode, "live or fixture")
      ->check(CLI::IsMember({"live", "fixture"}));
  app.add_option("--replay-timings", replay,
                 "File of '<database> <seconds>' completion times");
  app.add_option("--plot", plot, "Write an SVG plot of S(t) and E(t)");
  app.add_option("--stop-words", stop_words, "Stop-word list, one per line");
  app.add_option("--fixture-root", fixture_root,
                 "Directory for relative file: URLs (default: catalog dir)");
  app.add_option("--timeout-ms", config.timeout_ms, "Per-request timeout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return compsearch::kExitConfig;
  }

  try {
    config.extract_kinds = compsearch::ParseTargetKinds(extract);
  } catch (const compsearch::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return compsearch::kExitConfig;
  }
  config.topics = SplitCsv(topics);
  config.catalog_path = catalog;
  config.out_path = out;
  config.mode = mode == "fixture" ? RunMode::kFixture : RunMode::kLive;
  if (!replay.empty()) config.replay_timings_path = replay;
  if (!plot.empty()) config.plot_path = plot;
  if (!stop_words.empty()) config.stop_words_path = stop_words;
  if (!fixture_root.empty()) config.fixture_root = fixture_root;
  if (const char* ua = std::getenv("COMPSEARCH_USER_AGENT"); ua && *ua) {
    config.user_agent = ua;
  }
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    try {
      config.generated_at_unix = std::stoll(epoch);
    } catch (const std::exception&) {
      std::cerr << "error: SOURCE_DATE_EPOCH is not an integer\n";
      return compsearch::kExitConfig;
    }
  }

  const compsearch::RunOutcome outcome = compsearch::Run(config, std::cerr);
  if (outcome.report) {
    std::cerr << outcome.report->records.size() << " sources written to "
              << outcome.html_path.string() << " and "
              << outcome.json_path.string() << "\n";
  }
  return outcome.exit_code;
}
