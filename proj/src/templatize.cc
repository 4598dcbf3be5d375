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

#include "entcap/templatize.h"

#include <algorithm>
#include <deque>
#include <map>

#include "entcap/error.h"
#include "entcap/text.h"

namespace entcap {

std::string Template::ToString() const {
  std::vector<std::string> parts;
  parts.reserve(items.size());
  for (const TemplateItem &item : items) {
    if (const auto *w = std::get_if<WordItem>(&item)) {
      parts.push_back(w->form);
    } else {
      parts.push_back("<" + std::get<SlotItem>(item).slot_type.name + ">");
    }
  }
  return Join(parts, " ");
}

std::vector<int> Template::SlotPositions() const {
  std::vector<int> out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (std::holds_alternative<SlotItem>(items[i])) out.push_back(static_cast<int>(i));
  }
  return out;
}

const std::set<std::string> &DefaultRelationWhitelist() {
  static const std::set<std::string> kWhitelist = {
      "nsubj", "obj",  "iobj",   "dobj", "acomp", "det",  "neg", "nsubjpass",
      "pobj",  "predet", "prep", "prt",  "vmod",  "nmod", "cc"};
  return kWhitelist;
}

std::set<std::string> ParseRelationList(std::string_view text) {
  std::set<std::string> out;
  std::string current;
  auto flush = [&]() {
    std::string label = ToLower(CollapseWhitespace(current));
    if (!label.empty()) out.insert(label);
    current.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return out;
}

namespace {

// Removes "( ... )" spans, outermost open to its matching close.
std::string StripParentheses(std::string_view text) {
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '(') {
      int depth = 0;
      size_t j = i;
      for (; j < text.size(); ++j) {
        if (text[j] == '(') ++depth;
        if (text[j] == ')' && --depth == 0) break;
      }
      if (j < text.size()) {
        i = j + 1;
        continue;
      }
    }
    out += c;
    ++i;
  }
  return out;
}

bool EndsSentence(const std::string &token) {
  char last = token.back();
  return last == '.' || last == '!' || last == '?';
}

bool IsFinalPunct(const std::string &form) {
  return form == "." || form == "!" || form == "?";
}

}  // namespace

std::optional<std::string> Preprocess(std::string_view raw, int min_tokens) {
  std::vector<std::string> tokens = SplitWhitespace(StripParentheses(raw));

  std::vector<std::vector<std::string>> sentences(1);
  for (const std::string &tok : tokens) {
    sentences.back().push_back(tok);
    if (EndsSentence(tok)) sentences.emplace_back();
  }
  const std::vector<std::string> *best = nullptr;
  for (const auto &s : sentences) {
    if (best == nullptr || s.size() > best->size()) best = &s;
  }
  if (best == nullptr || static_cast<int>(best->size()) < min_tokens) {
    return std::nullopt;
  }
  return Join(*best, " ");
}

ParsedCaption Compress(const ParsedCaption &parse,
                       const std::set<std::string> &whitelist,
                       const CompressOptions &options) {
  ValidateParse(parse);
  const int n = static_cast<int>(parse.tokens.size());

  std::set<std::string> allowed;
  for (const std::string &label : whitelist) allowed.insert(ToLower(label));

  std::vector<std::vector<int>> children(n + 1);
  int root = 0;
  for (const Token &t : parse.tokens) {
    children[t.head].push_back(t.index);
    if (t.head == 0) root = t.index;
  }

  std::vector<int> mention_of(n + 1, -1);
  for (size_t m = 0; m < parse.mentions.size(); ++m) {
    for (int i = parse.mentions[m].start; i <= parse.mentions[m].end; ++i) {
      mention_of[i] = static_cast<int>(m);
    }
  }

  // A mention's internal edges are honored only while the mention survives
  // whole; otherwise its tokens fall back to the plain relation rule. Demoting
  // a mention can make another one partial, so iterate to a fixed point.
  std::vector<bool> atomic(parse.mentions.size(), options.keep_mention_internal);
  std::vector<bool> kept;
  for (;;) {
    kept.assign(n + 1, false);
    kept[root] = true;
    std::deque<int> queue = {root};
    while (!queue.empty()) {
      int gov = queue.front();
      queue.pop_front();
      for (int dep : children[gov]) {
        const Token &t = parse.tokens[dep - 1];
        bool keep = allowed.count(ToLower(t.deprel)) > 0;
        int m = mention_of[dep];
        if (!keep && m >= 0 && m == mention_of[gov] && atomic[m]) keep = true;
        if (!keep && options.keep_final_punct && dep == n && gov == root &&
            IsFinalPunct(t.form)) {
          keep = true;
        }
        if (keep) {
          kept[dep] = true;
          queue.push_back(dep);
        }
      }
    }
    bool changed = false;
    for (size_t m = 0; m < parse.mentions.size(); ++m) {
      if (!atomic[m]) continue;
      const EntityMention &em = parse.mentions[m];
      int count = 0;
      for (int i = em.start; i <= em.end; ++i) count += kept[i] ? 1 : 0;
      if (count > 0 && count < em.end - em.start + 1) {
        atomic[m] = false;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<int> renumber(n + 1, 0);
  int next = 0;
  for (int i = 1; i <= n; ++i) {
    if (kept[i]) renumber[i] = ++next;
  }

  ParsedCaption out;
  out.doc_id = parse.doc_id;
  out.comments = parse.comments;
  for (const Token &t : parse.tokens) {
    if (!kept[t.index]) continue;
    Token copy = t;
    int head = t.head;
    while (head != 0 && !kept[head]) head = parse.tokens[head - 1].head;
    copy.index = renumber[t.index];
    copy.head = head == 0 ? 0 : renumber[head];
    if (copy.columns.size() == 10) {
      copy.columns[0] = std::to_string(copy.index);
      copy.columns[6] = std::to_string(copy.head);
    }
    out.tokens.push_back(std::move(copy));
  }
  for (const EntityMention &m : parse.mentions) {
    bool whole = true;
    for (int i = m.start; i <= m.end; ++i) whole = whole && kept[i];
    if (!whole) continue;
    EntityMention copy = m;
    copy.start = renumber[m.start];
    copy.end = renumber[m.end];
    out.mentions.push_back(std::move(copy));
  }
  return out;
}

Template Generalize(const ParsedCaption &parse, const TypeSystem &ts) {
  std::map<int, const EntityMention *> by_start;
  for (const EntityMention &m : parse.mentions) by_start[m.start] = &m;

  Template out;
  out.doc_id = parse.doc_id;
  const int n = static_cast<int>(parse.tokens.size());
  for (int i = 1; i <= n;) {
    auto it = by_start.find(i);
    if (it != by_start.end()) {
      const EntityMention &m = *it->second;
      out.items.push_back(SlotItem{ResolveSlotType(m.surface, m.coarse, ts)});
      i = m.end + 1;
    } else {
      out.items.push_back(WordItem{parse.tokens[i - 1].form});
      ++i;
    }
  }
  return out;
}

TemplatizeResult BuildPairs(const std::vector<CaptionRecord> &corpus,
                            const TypeSystem &ts,
                            const TemplatizeOptions &options) {
  TemplatizeResult result;
  for (const CaptionRecord &record : corpus) {
    ++result.input;
    if (!Preprocess(record.raw, options.min_tokens)) {
      ++result.skipped;
      continue;
    }
    try {
      ParsedCaption compressed =
          Compress(record.parse, options.whitelist, options.compress);
      Template t = Generalize(compressed, ts);
      t.doc_id = record.doc_id;
      result.templates.push_back(std::move(t));
    } catch (const StructuralError &e) {
      throw StructuralError("record " + record.doc_id + ": " + e.what());
    }
  }
  return result;
}

size_t CaptionVocabulary(const std::vector<std::string> &captions) {
  std::set<std::string> vocab;
  for (const std::string &c : captions) {
    for (const std::string &tok : SplitWhitespace(c)) vocab.insert(ToLower(tok));
  }
  return vocab.size();
}

size_t TemplateVocabulary(const std::vector<Template> &templates) {
  std::set<std::string> vocab;
  for (const Template &t : templates) {
    for (const TemplateItem &item : t.items) {
      if (const auto *w = std::get_if<WordItem>(&item)) {
        vocab.insert(ToLower(w->form));
      } else {
        vocab.insert("<" + std::get<SlotItem>(item).slot_type.name + ">");
      }
    }
  }
  return vocab.size();
}

}  // namespace entcap
