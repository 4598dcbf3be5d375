// Copyright 2026 The entcap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entcap/text.h"

#include <cctype>

namespace entcap {

namespace {

bool IsSpace(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool IsPunct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string CollapseWhitespace(std::string_view s) {
  return Join(SplitWhitespace(s), " ");
}

std::string NormalizeName(std::string_view s) {
  return ToLower(CollapseWhitespace(s));
}

std::vector<TextSpan> WordSpans(std::string_view s) {
  std::vector<TextSpan> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i == start) break;
    size_t begin = start;
    size_t end = i;
    while (begin < end && IsPunct(s[begin])) ++begin;
    while (end > begin && IsPunct(s[end - 1])) --end;
    if (begin == end) {
      // All punctuation, e.g. "--" or "...": one token per character.
      for (size_t k = start; k < i; ++k) out.push_back({k, k + 1});
      continue;
    }
    for (size_t k = start; k < begin; ++k) out.push_back({k, k + 1});
    out.push_back({begin, end});
    for (size_t k = end; k < i; ++k) out.push_back({k, k + 1});
  }
  return out;
}

std::vector<std::string> WordTokenize(std::string_view s) {
  std::vector<std::string> out;
  for (const TextSpan &span : WordSpans(s)) {
    out.emplace_back(s.substr(span.begin, span.end - span.begin));
  }
  return out;
}

std::string Join(const std::vector<std::string> &pieces,
                 std::string_view separator) {
  std::string out;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (i > 0) out += separator;
    out += pieces[i];
  }
  return out;
}

}  // namespace entcap
