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

#ifndef COMPSEARCH_EXTRACTION_RULE_H_
#define COMPSEARCH_EXTRACTION_RULE_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace compsearch {

enum class TargetKind { kImage, kCitation, kExcerpt, kHeading, kFullText };

std::string_view TargetKindName(TargetKind kind);
std::optional<TargetKind> ParseTargetKind(std::string_view name);

// Parses the `--extract` list, e.g. "citation,excerpt,image".
// Throws Error(kConfig) on unknown names or an empty list.
std::set<TargetKind> ParseTargetKinds(std::string_view csv);

// One declarative extraction step of a database's per-source rules.
struct ExtractionRule {
  TargetKind target_kind = TargetKind::kExcerpt;
  std::string pattern;
  int capture_group = 1;
  std::optional<std::size_t> max_matches;  // nullopt: unlimited

  friend bool operator==(const ExtractionRule&,
                         const ExtractionRule&) = default;
};

// Throws Error(kInvalidPattern) when the pattern does not compile or lacks
// the requested capture group, Error(kInvalidDescriptor) on a bad cap.
void ValidateRule(const ExtractionRule& rule);

}  // namespace compsearch

#endif  // COMPSEARCH_EXTRACTION_RULE_H_
