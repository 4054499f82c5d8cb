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

#include "compsearch/url.h"

#include <vector>

#include "compsearch/text.h"

namespace compsearch {
namespace {

bool IsUnreserved(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
         c == '~';
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Length of the scheme prefix (excluding ':'), or 0 when there is none.
std::size_t SchemeLength(std::string_view url) {
  if (url.empty()) return 0;
  const char first = url[0];
  if (!((first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z'))) {
    return 0;
  }
  for (std::size_t i = 1; i < url.size(); ++i) {
    const char c = url[i];
    if (c == ':') return i;
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
    if (!ok) return 0;
  }
  return 0;
}

std::string RemoveDotSegments(std::string_view path) {
  const bool absolute = !path.empty() && path.front() == '/';
  std::vector<std::string> segments;
  std::size_t start = absolute ? 1 : 0;
  bool trailing_slash = false;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    const std::string_view seg = path.substr(start, slash - start);
    trailing_slash = false;
    if (seg == ".") {
      trailing_slash = true;
    } else if (seg == "..") {
      if (!segments.empty() && segments.back() != "..") {
        segments.pop_back();
      } else if (!absolute) {
        segments.emplace_back("..");
      }
      trailing_slash = true;
    } else {
      segments.emplace_back(seg);
    }
    start = slash + 1;
  }
  std::string out = absolute ? "/" : "";
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) out += '/';
    out += segments[i];
  }
  if (trailing_slash && !out.empty() && out.back() != '/') out += '/';
  return out;
}

std::string Join(const UrlParts& parts) {
  std::string out;
  if (!parts.scheme.empty()) out += parts.scheme + ":";
  if (parts.has_authority) {
    if (!parts.scheme.empty()) out += "//";
    out += parts.authority;
  }
  out += parts.path;
  out += parts.query;
  return out;
}

}  // namespace

std::string PercentEncode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size() * 3);
  for (char c : text) {
    if (IsUnreserved(c)) {
      out.push_back(c);
    } else {
      const auto u = static_cast<unsigned char>(c);
      out.push_back('%');
      out.push_back(kHex[u >> 4]);
      out.push_back(kHex[u & 0xf]);
    }
  }
  return out;
}

std::string PercentDecode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      const int hi = HexValue(text[i + 1]);
      const int lo = HexValue(text[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

UrlParts SplitUrl(std::string_view url) {
  UrlParts parts;
  if (const std::size_t hash = url.find('#'); hash != std::string_view::npos) {
    parts.fragment = std::string(url.substr(hash));
    url = url.substr(0, hash);
  }
  if (const std::size_t q = url.find('?'); q != std::string_view::npos) {
    parts.query = std::string(url.substr(q));
    url = url.substr(0, q);
  }
  if (const std::size_t n = SchemeLength(url); n > 0) {
    parts.scheme = ToLowerAscii(url.substr(0, n));
    url = url.substr(n + 1);
  }
  if (url.substr(0, 2) == "//") {
    url = url.substr(2);
    const std::size_t slash = url.find('/');
    parts.has_authority = true;
    parts.authority = std::string(url.substr(0, slash));
    url = slash == std::string_view::npos ? std::string_view{}
                                          : url.substr(slash);
  }
  parts.path = std::string(url);
  return parts;
}

bool HasScheme(std::string_view url) { return SchemeLength(url) > 0; }

std::string UrlHost(std::string_view url) {
  const UrlParts parts = SplitUrl(url);
  if (!parts.has_authority) return "";
  std::string_view host = parts.authority;
  if (const std::size_t at = host.rfind('@'); at != std::string_view::npos) {
    host = host.substr(at + 1);
  }
  if (!host.empty() && host.front() == '[') {
    const std::size_t close = host.find(']');
    return ToLowerAscii(host.substr(0, close == std::string_view::npos
                                           ? host.size()
                                           : close + 1));
  }
  return ToLowerAscii(host.substr(0, host.find(':')));
}

std::string ResolveUrl(std::string_view base, std::string_view reference) {
  const UrlParts ref = SplitUrl(reference);
  if (!ref.scheme.empty()) {
    UrlParts out = ref;
    out.path = RemoveDotSegments(ref.path);
    return Join(out);
  }

  UrlParts b = SplitUrl(base);
  if (b.scheme.empty() && !b.has_authority) {
    // "db.example/search" style base: leading segment is the host.
    const std::size_t slash = b.path.find('/');
    b.has_authority = true;
    b.authority = b.path.substr(0, slash);
    b.path = slash == std::string::npos ? "" : b.path.substr(slash);
  }

  UrlParts out;
  out.scheme = b.scheme;
  if (ref.has_authority) {
    out.has_authority = true;
    out.authority = ref.authority;
    out.path = RemoveDotSegments(ref.path);
    out.query = ref.query;
    return Join(out);
  }
  out.has_authority = b.has_authority;
  out.authority = b.authority;
  if (ref.path.empty()) {
    out.path = b.path;
    out.query = ref.query.empty() ? b.query : ref.query;
  } else if (ref.path.front() == '/') {
    out.path = RemoveDotSegments(ref.path);
    out.query = ref.query;
  } else {
    std::string merged;
    if (b.has_authority && b.path.empty()) {
      merged = "/" + ref.path;
    } else {
      const std::size_t slash = b.path.rfind('/');
      merged = (slash == std::string::npos ? std::string()
                                           : b.path.substr(0, slash + 1)) +
               ref.path;
    }
    out.path = RemoveDotSegments(merged);
    out.query = ref.query;
  }
  return Join(out);
}

bool IsAbsoluteUrl(std::string_view url) {
  const UrlParts parts = SplitUrl(url);
  if (parts.scheme.empty()) return false;
  if (parts.scheme == "file") return true;
  return parts.has_authority && !parts.authority.empty();
}

}  // namespace compsearch
