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

#include "compsearch/text.h"

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

namespace compsearch {
namespace {

bool IsAsciiPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 0x21 && u <= 0x2f) || (u >= 0x3a && u <= 0x40) ||
         (u >= 0x5b && u <= 0x60) || (u >= 0x7b && u <= 0x7e);
}

char LowerAscii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

void AppendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

constexpr std::uint32_t kReplacement = 0xfffd;

constexpr std::array<std::pair<std::string_view, std::uint32_t>, 20>
    kNamedEntities = {{{"amp", '&'},
                       {"lt", '<'},
                       {"gt", '>'},
                       {"quot", '"'},
                       {"apos", '\''},
                       {"nbsp", 0xa0},
                       {"mdash", 0x2014},
                       {"ndash", 0x2013},
                       {"hellip", 0x2026},
                       {"copy", 0xa9},
                       {"lsquo", 0x2018},
                       {"rsquo", 0x2019},
                       {"ldquo", 0x201c},
                       {"rdquo", 0x201d},
                       {"laquo", 0xab},
                       {"raquo", 0xbb},
                       {"middot", 0xb7},
                       {"sect", 0xa7},
                       {"eacute", 0xe9},
                       {"aacute", 0xe1}}};

bool StartsWithNoCase(std::string_view text, std::size_t pos,
                      std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (LowerAscii(text[pos + i]) != prefix[i]) return false;
  }
  return true;
}

// Position just past the closing `</name ...>` tag, or npos.
std::size_t SkipRawTextElement(std::string_view html, std::size_t pos,
                               std::string_view name) {
  const std::string closing = "</" + std::string(name);
  for (std::size_t i = pos; i < html.size(); ++i) {
    if (html[i] == '<' && StartsWithNoCase(html, i, closing)) {
      const std::size_t gt = html.find('>', i);
      return gt == std::string_view::npos ? html.size() : gt + 1;
    }
  }
  return html.size();
}

}  // namespace

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string NormalizeToken(std::string_view chunk) {
  std::size_t begin = 0;
  std::size_t end = chunk.size();
  while (begin < end && IsAsciiPunct(chunk[begin])) ++begin;
  while (end > begin && IsAsciiPunct(chunk[end - 1])) --end;
  return ToLowerAscii(chunk.substr(begin, end - begin));
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !IsAsciiSpace(text[i])) ++i;
    if (i > start) {
      std::string token = NormalizeToken(text.substr(start, i - start));
      if (!token.empty()) tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

std::string ToLowerAscii(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = LowerAscii(c);
  return out;
}

std::string Trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && IsAsciiSpace(text[begin])) ++begin;
  while (end > begin && IsAsciiSpace(text[end - 1])) --end;
  return std::string(text.substr(begin, end - begin));
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (IsAsciiSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string SanitizeUtf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto lead = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    std::uint32_t min_cp = 0;
    if (lead < 0x80) {
      out.push_back(bytes[i++]);
      continue;
    } else if ((lead & 0xe0) == 0xc0) {
      len = 2, cp = lead & 0x1f, min_cp = 0x80;
    } else if ((lead & 0xf0) == 0xe0) {
      len = 3, cp = lead & 0x0f, min_cp = 0x800;
    } else if ((lead & 0xf8) == 0xf0) {
      len = 4, cp = lead & 0x07, min_cp = 0x10000;
    }
    bool valid = len != 0 && i + len <= bytes.size();
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto cont = static_cast<unsigned char>(bytes[i + k]);
      if ((cont & 0xc0) != 0x80) {
        valid = false;
      } else {
        cp = (cp << 6) | (cont & 0x3f);
      }
    }
    valid = valid && cp >= min_cp && cp <= 0x10ffff &&
            !(cp >= 0xd800 && cp <= 0xdfff);
    if (valid) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      AppendUtf8(out, kReplacement);
      ++i;
    }
  }
  return out;
}

std::string DecodeHtmlEntities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(text[i++]);
      continue;
    }
    const std::string_view name = text.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (!name.empty() && name[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const std::string_view digits = name.substr(hex ? 2 : 1);
      bool ok = !digits.empty();
      for (char c : digits) {
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        if (v < 0 || cp > 0x10ffff) {
          ok = false;
          break;
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
      }
      if (ok) {
        if (cp == 0 || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) {
          cp = kReplacement;
        }
        AppendUtf8(out, cp);
        decoded = true;
      }
    } else {
      for (const auto& [entity, cp] : kNamedEntities) {
        if (name == entity) {
          AppendUtf8(out, cp);
          decoded = true;
          break;
        }
      }
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

std::string EscapeHtml(std::string_view text) {
  std::string out;
  out.reserve(text.size() + text.size() / 8);
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string HtmlToText(std::string_view html) {
  std::string text;
  text.reserve(html.size());
  std::size_t i = 0;
  while (i < html.size()) {
    const char next = i + 1 < html.size() ? html[i + 1] : '\0';
    const bool opens_tag = (next >= 'a' && next <= 'z') ||
                           (next >= 'A' && next <= 'Z') || next == '/' ||
                           next == '!' || next == '?';
    if (html[i] != '<' || !opens_tag) {
      text.push_back(html[i++]);
      continue;
    }
    if (html.compare(i, 4, "<!--") == 0) {
      const std::size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
    } else if (StartsWithNoCase(html, i, "<script")) {
      i = SkipRawTextElement(html, i + 7, "script");
    } else if (StartsWithNoCase(html, i, "<style")) {
      i = SkipRawTextElement(html, i + 6, "style");
    } else {
      const std::size_t gt = html.find('>', i);
      i = gt == std::string_view::npos ? html.size() : gt + 1;
    }
    text.push_back(' ');
  }
  std::string decoded = DecodeHtmlEntities(text);
  for (std::size_t pos = decoded.find("\xC2\xA0"); pos != std::string::npos;
       pos = decoded.find("\xC2\xA0", pos)) {
    decoded.replace(pos, 2, " ");
  }
  return CollapseWhitespace(decoded);
}

}  // namespace compsearch
