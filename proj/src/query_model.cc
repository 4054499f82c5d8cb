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

#include "compsearch/query_model.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "compsearch/error.h"
#include "compsearch/text.h"
#include "pattern.h"

namespace compsearch {
namespace {

using nlohmann::json;

std::size_t CountOccurrences(std::string_view haystack,
                             std::string_view needle) {
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kConfig, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::set<std::string> StringSet(const json& value, std::string_view field) {
  if (!value.is_array()) {
    throw Error(ErrorCode::kConfig,
                std::string(field) + " must be an array of strings");
  }
  std::set<std::string> out;
  for (const json& item : value) out.insert(item.get<std::string>());
  return out;
}

ExtractionRule ParseRule(const json& obj) {
  ExtractionRule rule;
  const auto kind_name = obj.at("target_kind").get<std::string>();
  const auto kind = ParseTargetKind(kind_name);
  if (!kind) {
    throw Error(ErrorCode::kConfig, "unknown target_kind '" + kind_name + "'");
  }
  rule.target_kind = *kind;
  rule.pattern = obj.at("pattern").get<std::string>();
  rule.capture_group = obj.value("capture_group", 1);
  if (auto it = obj.find("max_matches"); it != obj.end() && !it->is_null()) {
    const auto cap = it->get<std::int64_t>();
    if (cap <= 0) {
      throw Error(ErrorCode::kInvalidDescriptor,
                  "max_matches must be positive or null");
    }
    rule.max_matches = static_cast<std::size_t>(cap);
  }
  return rule;
}

DatabaseDescriptor ParseDescriptor(const json& obj) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kConfig, "catalog entries must be objects");
  }
  DatabaseDescriptor d;
  d.name = obj.at("name").get<std::string>();
  d.query_url_template = obj.at("query_url_template").get<std::string>();
  d.link_pattern = obj.at("link_pattern").get<std::string>();
  d.result_page_limit = obj.value("result_page_limit", 1);
  d.topic_tags = StringSet(obj.at("topic_tags"), "topic_tags");
  if (auto it = obj.find("extraction_rules"); it != obj.end()) {
    for (const json& rule : *it) d.extraction_rules.push_back(ParseRule(rule));
  }
  d.citation_pattern = obj.value("citation_pattern", std::string());
  d.rate_limit_ms = obj.value("rate_limit_ms", std::int64_t{0});
  return d;
}

}  // namespace

void ValidateDescriptor(const DatabaseDescriptor& d) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kInvalidDescriptor, "database '" + d.name + "': " + why);
  };
  if (d.name.empty()) fail("name is empty");
  if (CountOccurrences(d.query_url_template, kQueryPlaceholder) != 1) {
    fail("query_url_template must contain {QUERY} exactly once");
  }
  if (d.result_page_limit < 1) fail("result_page_limit must be positive");
  if (d.topic_tags.empty()) fail("topic_tags is empty");
  if (d.rate_limit_ms < 0) fail("rate_limit_ms is negative");
  const boost::regex link = internal::CompilePattern(d.link_pattern);
  if (link.mark_count() < 1) fail("link_pattern needs a capture group");
  if (!d.citation_pattern.empty()) {
    const boost::regex cite = internal::CompilePattern(d.citation_pattern);
    if (cite.mark_count() < 1) fail("citation_pattern needs a capture group");
  }
  for (const ExtractionRule& rule : d.extraction_rules) ValidateRule(rule);
}

std::set<std::string> DefaultStopWords() {
  return {"a",    "an",   "and",  "as",   "at",  "but",  "by",   "for",
          "from", "in",   "into", "nor",  "of",  "on",   "or",   "so",
          "than", "that", "the",  "then", "to",  "with", "yet",  "about",
          "over", "under", "upon", "via", "is",  "are",  "was",  "were",
          "be",   "its",  "this", "these", "those"};
}

std::set<std::string> LoadStopWords(const std::filesystem::path& path) {
  std::istringstream in(ReadFile(path));
  std::set<std::string> words;
  for (std::string line; std::getline(in, line);) {
    const std::string word = Trim(line);
    if (word.empty() || word.front() == '#') continue;
    words.insert(ToLowerAscii(word));
  }
  return words;
}

Query ParseQuery(std::string_view raw_text, std::set<std::string> topics,
                 const std::set<std::string>& stop_words) {
  if (Trim(raw_text).empty()) {
    throw Error(ErrorCode::kEmptyQuery, "query text is blank");
  }
  Query query;
  query.raw_text = std::string(raw_text);
  query.topics = std::move(topics);
  for (std::string& token : Tokenize(raw_text)) {
    if (stop_words.contains(token)) continue;
    if (std::find(query.keywords.begin(), query.keywords.end(), token) !=
        query.keywords.end()) {
      continue;
    }
    query.keywords.push_back(std::move(token));
  }
  if (query.keywords.empty()) {
    throw Error(ErrorCode::kEmptyQuery,
                "no keywords left in '" + query.raw_text + "'");
  }
  return query;
}

std::vector<DatabaseDescriptor> SelectDatabases(
    const Query& query, std::span<const DatabaseDescriptor> catalog) {
  if (catalog.empty()) throw Error(ErrorCode::kConfig, "catalog is empty");
  if (query.topics.empty()) return {catalog.begin(), catalog.end()};

  std::vector<DatabaseDescriptor> selected;
  for (const DatabaseDescriptor& d : catalog) {
    const bool match = std::any_of(
        d.topic_tags.begin(), d.topic_tags.end(),
        [&](const std::string& tag) { return query.topics.contains(tag); });
    if (match) selected.push_back(d);
  }
  if (selected.empty()) {
    throw Error(ErrorCode::kNoDatabaseMatches,
                "no database is tagged with the selected topics");
  }
  return selected;
}

std::vector<DatabaseDescriptor> ParseCatalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, std::string("catalog: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kConfig, "catalog must be a JSON array");
  }
  std::vector<DatabaseDescriptor> catalog;
  std::set<std::string> names;
  for (const json& entry : doc) {
    DatabaseDescriptor d;
    try {
      d = ParseDescriptor(entry);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kConfig, std::string("catalog: ") + e.what());
    }
    ValidateDescriptor(d);
    if (!names.insert(d.name).second) {
      throw Error(ErrorCode::kInvalidDescriptor,
                  "duplicate database name '" + d.name + "'");
    }
    catalog.push_back(std::move(d));
  }
  return catalog;
}

std::vector<DatabaseDescriptor> LoadCatalog(const std::filesystem::path& path) {
  return ParseCatalog(ReadFile(path));
}

}  // namespace compsearch
