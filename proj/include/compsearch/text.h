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

// Token and markup helpers shared by query parsing, scoring and extraction.
//
// Word boundaries are the same everywhere: a token is a maximal run of
// non-whitespace bytes, lowercased (ASCII only) with leading and trailing
// ASCII punctuation removed. Interior punctuation such as the hyphen in
// "ww1-era" is kept.

#ifndef COMPSEARCH_TEXT_H_
#define COMPSEARCH_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace compsearch {

bool IsAsciiSpace(char c);

// Normalizes a single whitespace-free chunk. May return an empty string when
// the chunk is all punctuation.
std::string NormalizeToken(std::string_view chunk);

// Whitespace-split + NormalizeToken, dropping empty tokens.
std::vector<std::string> Tokenize(std::string_view text);

std::string ToLowerAscii(std::string_view text);

std::string Trim(std::string_view text);

// Collapses every whitespace run to one space and trims the ends.
std::string CollapseWhitespace(std::string_view text);

// Replaces every byte that does not start a well-formed UTF-8 sequence
// with U+FFFD.
std::string SanitizeUtf8(std::string_view bytes);

// Decodes the common named entities and numeric character references.
std::string DecodeHtmlEntities(std::string_view text);

// Escapes &, <, >, " and ' for HTML text and attribute contexts.
std::string EscapeHtml(std::string_view text);

// Visible text of a markup fragment: drops script/style/comments, replaces
// tags with spaces, decodes entities, collapses whitespace (no-break
// spaces included).
std::string HtmlToText(std::string_view html);

}  // namespace compsearch

#endif  // COMPSEARCH_TEXT_H_
