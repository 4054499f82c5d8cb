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

#include "compsearch/extraction_rule.h"

#include "compsearch/error.h"
#include "compsearch/text.h"
#include "pattern.h"

namespace compsearch {

std::string_view TargetKindName(TargetKind kind) {
  switch (kind) {
    case TargetKind::kImage: return "image";
    case TargetKind::kCitation: return "citation";
    case TargetKind::kExcerpt: return "excerpt";
    case TargetKind::kHeading: return "heading";
    case TargetKind::kFullText: return "full_text";
  }
  return "excerpt";
}

std::optional<TargetKind> ParseTargetKind(std::string_view name) {
  for (TargetKind kind :
       {TargetKind::kImage, TargetKind::kCitation, TargetKind::kExcerpt,
        TargetKind::kHeading, TargetKind::kFullText}) {
    if (TargetKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::set<TargetKind> ParseTargetKinds(std::string_view csv) {
  std::set<TargetKind> kinds;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    const std::string name = Trim(csv.substr(start, comma - start));
    if (!name.empty()) {
      const auto kind = ParseTargetKind(name);
      if (!kind) {
        throw Error(ErrorCode::kConfig, "unknown extract kind '" + name + "'");
      }
      kinds.insert(*kind);
    }
    start = comma + 1;
  }
  if (kinds.empty()) {
    throw Error(ErrorCode::kConfig, "extract kind list is empty");
  }
  return kinds;
}

void ValidateRule(const ExtractionRule& rule) {
  const boost::regex re = internal::CompilePattern(rule.pattern);
  if (rule.capture_group < 1 ||
      static_cast<std::size_t>(rule.capture_group) > re.mark_count()) {
    throw Error(ErrorCode::kInvalidPattern,
                "pattern '" + rule.pattern + "' has no capture group " +
                    std::to_string(rule.capture_group));
  }
  if (rule.max_matches && *rule.max_matches == 0) {
    throw Error(ErrorCode::kInvalidDescriptor,
                "max_matches must be positive");
  }
}

}  // namespace compsearch
