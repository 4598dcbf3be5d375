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

#ifndef ENTCAP_TEMPLATIZE_H_
#define ENTCAP_TEMPLATIZE_H_

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entcap/parse.h"
#include "entcap/typesys.h"

namespace entcap {

struct WordItem {
  std::string form;
  bool operator==(const WordItem &) const = default;
};

struct SlotItem {
  SlotType slot_type;
  bool operator==(const SlotItem &) const = default;
};

using TemplateItem = std::variant<WordItem, SlotItem>;

// A caption with typed slots in place of named entities.
struct Template {
  std::string doc_id;
  std::vector<TemplateItem> items;

  bool operator==(const Template &) const = default;

  // Space-joined rendering with slots written as "<Type>".
  std::string ToString() const;
  // Positions (item indices) holding SlotItems, ascending.
  std::vector<int> SlotPositions() const;
};

// Relations whose dependents survive compression.
const std::set<std::string> &DefaultRelationWhitelist();

// Parses a comma-separated relation list; labels are lowercased.
std::set<std::string> ParseRelationList(std::string_view text);

// Strips parenthesized spans, keeps the longest sentence (first on ties) and
// rejects results shorter than `min_tokens` whitespace tokens. An unmatched
// '(' or ')' stays in the text as a literal.
std::optional<std::string> Preprocess(std::string_view raw,
                                      int min_tokens = 10);

struct CompressOptions {
  // Edges between two tokens of the same entity mention are always kept,
  // so multiword names such as "Eric Bailly" (compound) survive intact.
  bool keep_mention_internal = true;
  // The sentence-final '.', '!' or '?' survives when it hangs off the root.
  bool keep_final_punct = true;
};

// Breadth-first pruning from the root: a dependent is kept iff its relation
// (case-insensitive) is whitelisted and its governor was kept. Surviving
// tokens keep surface order and are renumbered; mentions that lose any
// token are dropped. Throws StructuralError for invalid parses.
ParsedCaption Compress(const ParsedCaption &parse,
                       const std::set<std::string> &whitelist,
                       const CompressOptions &options = {});

// Replaces each mention span with a slot typed by ResolveSlotType.
Template Generalize(const ParsedCaption &parse, const TypeSystem &ts);

struct CaptionRecord {
  std::string doc_id;
  std::string raw;
  ParsedCaption parse;
};

struct TemplatizeResult {
  std::vector<Template> templates;
  int input = 0;
  int skipped = 0;
};

struct TemplatizeOptions {
  std::set<std::string> whitelist = DefaultRelationWhitelist();
  CompressOptions compress;
  int min_tokens = 10;
};

// Runs preprocess -> compress -> generalize per record. Captions rejected by
// Preprocess are counted as skipped. Structural errors are rethrown with the
// record id prefixed.
TemplatizeResult BuildPairs(const std::vector<CaptionRecord> &corpus,
                            const TypeSystem &ts,
                            const TemplatizeOptions &options = {});

// Distinct whitespace tokens over raw captions, case-folded.
size_t CaptionVocabulary(const std::vector<std::string> &captions);
// Distinct items over templates: word forms case-folded, slots as "<Type>".
size_t TemplateVocabulary(const std::vector<Template> &templates);

}  // namespace entcap

#endif  // ENTCAP_TEMPLATIZE_H_
