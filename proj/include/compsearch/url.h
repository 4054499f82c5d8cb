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

#ifndef COMPSEARCH_URL_H_
#define COMPSEARCH_URL_H_

#include <string>
#include <string_view>

namespace compsearch {

// Percent-encodes everything outside the RFC 3986 unreserved set
// (ALPHA / DIGIT / "-" / "." / "_" / "~"), using upper-case hex.
std::string PercentEncode(std::string_view text);

// Decodes %XX escapes; malformed escapes are copied through unchanged.
std::string PercentDecode(std::string_view text);

struct UrlParts {
  std::string scheme;     // without ':'; empty for scheme-less references
  bool has_authority = false;
  std::string authority;  // host[:port], possibly with userinfo
  std::string path;
  std::string query;      // including leading '?', if any
  std::string fragment;   // including leading '#', if any
};

UrlParts SplitUrl(std::string_view url);

bool HasScheme(std::string_view url);

// Lower-cased host of an absolute URL; empty when there is none.
std::string UrlHost(std::string_view url);

// Resolves `reference` against `base` (RFC 3986 section 5.2, with dot-segment
// removal). A base without a scheme, such as "db.example/search", is treated
// as host + path so that "/doc/1" resolves to "db.example/doc/1".
// Fragments are dropped from the result.
std::string ResolveUrl(std::string_view base, std::string_view reference);

// True for URLs that carry a scheme and either an authority or the `file:`
// scheme.
bool IsAbsoluteUrl(std::string_view url);

}  // namespace compsearch

#endif  // COMPSEARCH_URL_H_
