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

#ifndef ENTCAP_TEXT_H_
#define ENTCAP_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace entcap {

// ASCII case folding. Non-ASCII bytes are passed through unchanged.
std::string ToLower(std::string_view s);

// Splits on runs of ASCII whitespace; no empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);

// Trims and collapses internal whitespace runs to a single space.
std::string CollapseWhitespace(std::string_view s);

// Canonical key for entity names: case-folded and whitespace-collapsed.
std::string NormalizeName(std::string_view s);

// Byte range [begin, end) of a token within its source string.
struct TextSpan {
  size_t begin = 0;
  size_t end = 0;
};

// Token boundaries used by WordTokenize.
std::vector<TextSpan> WordSpans(std::string_view s);

// Whitespace tokenization that also peels leading and trailing ASCII
// punctuation off each piece as separate one-character tokens, so that
// "Norfolk," yields {"Norfolk", ","}.
std::vector<std::string> WordTokenize(std::string_view s);

std::string Join(const std::vector<std::string> &pieces,
                 std::string_view separator);

}  // namespace entcap

#endif  // ENTCAP_TEXT_H_
