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

// The user's query, its keyword decomposition, and the catalog of searchable
// databases a run may dispatch to.

#ifndef COMPSEARCH_QUERY_MODEL_H_
#define COMPSEARCH_QUERY_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compsearch/extraction_rule.h"

namespace compsearch {

struct Query {
  std::string raw_text;
  std::vector<std::string> keywords;  // lowercase, ordered, unique
  std::set<std::string> topics;
};

// A searchable database, described as data rather than code.
struct DatabaseDescriptor {
  std::string name;
  // Contains "{QUERY}" exactly once; may contain "{PAGE}" (1-based).
  std::string query_url_template;
  std::string link_pattern;  // capture group 1 is the link
  int result_page_limit = 1;
  std::set<std::string> topic_tags;
  std::vector<ExtractionRule> extraction_rules;
  std::string citation_pattern;  // empty: the database has no citations
  std::int64_t rate_limit_ms = 0;
};

inline constexpr std::string_view kQueryPlaceholder = "{QUERY}";
inline constexpr std::string_view kPagePlaceholder = "{PAGE}";

// Checks every descriptor invariant. Throws Error(kInvalidDescriptor) or
// Error(kInvalidPattern).
void ValidateDescriptor(const DatabaseDescriptor& descriptor);

// English articles, conjunctions and common prepositions.
std::set<std::string> DefaultStopWords();

// Reads one stop word per line; blank lines and '#' comments are skipped.
std::set<std::string> LoadStopWords(const std::filesystem::path& path);

// Tokenizes `raw_text` (see text.h for the normalization), drops stop words
// and duplicates, keeps first-occurrence order.
// Throws Error(kEmptyQuery) when nothing survives.
Query ParseQuery(std::string_view raw_text, std::set<std::string> topics,
                 const std::set<std::string>& stop_words);

// Catalog entries whose topic tags intersect the query's topics, in catalog
// order. An empty topic set selects the whole catalog.
// Throws Error(kNoDatabaseMatches) when a non-empty topic set matches nothing,
// Error(kConfig) when the catalog is empty.
std::vector<DatabaseDescriptor> SelectDatabases(
    const Query& query, std::span<const DatabaseDescriptor> catalog);

// Catalog file: a JSON array of descriptor objects, field names as in
// DatabaseDescriptor; extraction rules use
// {"target_kind", "pattern", "capture_group", "max_matches"} with
// "max_matches" null or absent for unlimited.
// Throws Error(kConfig) on malformed documents and the validation errors
// above for invalid descriptors.
std::vector<DatabaseDescriptor> ParseCatalog(std::string_view json_text);
std::vector<DatabaseDescriptor> LoadCatalog(const std::filesystem::path& path);

}  // namespace compsearch

#endif  // COMPSEARCH_QUERY_MODEL_H_
