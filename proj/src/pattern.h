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

// Internal regex plumbing. Patterns in catalogs use Perl syntax.

#ifndef COMPSEARCH_SRC_PATTERN_H_
#define COMPSEARCH_SRC_PATTERN_H_

#include <boost/regex.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "compsearch/error.h"

namespace compsearch::internal {

inline boost::regex CompilePattern(std::string_view pattern) {
  try {
    return boost::regex(pattern.begin(), pattern.end(), boost::regex::perl);
  } catch (const boost::regex_error& e) {
    throw Error(ErrorCode::kInvalidPattern,
                "'" + std::string(pattern) + "': " + e.what());
  }
}

// Calls `visit(match)` for each non-overlapping match in document order until
// it returns false. Matching errors (catastrophic backtracking) surface as
// kInvalidPattern.
inline void ForEachMatch(
    std::string_view text, const boost::regex& re,
    const std::function<bool(const boost::match_results<
                             std::string_view::const_iterator>&)>& visit) {
  using Iter = boost::regex_iterator<std::string_view::const_iterator>;
  try {
    for (Iter it(text.begin(), text.end(), re), end; it != end; ++it) {
      if (!visit(*it)) break;
    }
  } catch (const Error&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw Error(ErrorCode::kInvalidPattern, e.what());
  }
}

inline std::string GroupText(
    const boost::match_results<std::string_view::const_iterator>& m,
    int group) {
  if (group < 0 || static_cast<std::size_t>(group) >= m.size() ||
      !m[group].matched) {
    return {};
  }
  return std::string(m[group].first, m[group].second);
}

}  // namespace compsearch::internal

#endif  // COMPSEARCH_SRC_PATTERN_H_
