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

#ifndef ENTCAP_PARSE_H_
#define ENTCAP_PARSE_H_

#include <istream>
#include <string>
#include <vector>

#include "entcap/typesys.h"

namespace entcap {

// One row of a dependency parse.
struct Token {
  int index = 0;       // 1-based
  std::string form;
  int head = 0;        // 0 = root
  std::string deprel;
  // The full CoNLL-U row as read (10 columns), kept for round-tripping.
  // Empty for tokens built in code.
  std::vector<std::string> columns;
};

// Named entity span over token indices, inclusive on both ends.
struct EntityMention {
  int start = 0;
  int end = 0;
  std::string surface;
  CoarseType coarse = CoarseType::kMiscellaneous;

  bool operator==(const EntityMention &) const = default;
};

struct ParsedCaption {
  std::string doc_id;
  std::vector<Token> tokens;
  std::vector<EntityMention> mentions;
  // Non-id comment lines from the CoNLL-U block, e.g. "# text = ...".
  std::vector<std::string> comments;

  std::string Text() const;
};

// Throws StructuralError unless the tokens are numbered 1..n, form a single
// rooted tree without self-loops or cycles, and the mentions are in-bounds,
// disjoint, with surfaces equal to the space-joined forms of their spans.
void ValidateParse(const ParsedCaption &parse);

// Reads CoNLL-U blocks. The document id comes from a "# sent_id = ..." or
// "# doc_id = ..." comment, falling back to the 1-based block ordinal.
// Multiword-token ranges and empty nodes are skipped. Throws ParseError
// naming `source` and the line for malformed rows.
std::vector<ParsedCaption> ReadConllu(std::istream &in,
                                      const std::string &source = "");

void WriteConllu(std::ostream &out, const ParsedCaption &parse);

}  // namespace entcap

#endif  // ENTCAP_PARSE_H_
