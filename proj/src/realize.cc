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

#include "entcap/realize.h"

#include <algorithm>
#include <regex>
#include <set>

#include "entcap/error.h"

namespace entcap {

namespace {

bool AttachesLeft(const std::string &tok) {
  return tok == "." || tok == "," || tok == "!" || tok == "?" || tok == ";" ||
         tok == ":";
}

}  // namespace

std::string Detokenize(const std::vector<std::string> &tokens) {
  std::string out;
  bool glue_next = false;
  bool in_plain_quote = false;
  for (const std::string &tok : tokens) {
    if (tok.empty()) continue;
    if (!out.empty() && !glue_next && !AttachesLeft(tok)) out += ' ';
    bool opening = tok == "``" || tok == "“" || tok == "‘";
    if (tok == "\"") {
      // A closing plain quote hugs the previous word.
      if (in_plain_quote && !out.empty() && out.back() == ' ') out.pop_back();
      opening = !in_plain_quote;
      in_plain_quote = !in_plain_quote;
    }
    out += tok;
    glue_next = opening;
  }
  return out;
}

std::string GenericWord(const SlotType &type) { return type.name; }

std::string Fill(const Template &tmpl, const Assignment &assignment) {
  std::vector<int> slots = tmpl.SlotPositions();
  std::set<int> slot_set(slots.begin(), slots.end());
  for (const auto &[pos, c] : assignment.chosen) {
    if (!slot_set.count(pos)) {
      throw ContractError("assignment fills position " + std::to_string(pos) +
                          ", which is not a slot of template " + tmpl.doc_id);
    }
  }
  std::set<int> unfillable(assignment.unfillable.begin(),
                           assignment.unfillable.end());
  for (int pos : unfillable) {
    if (!slot_set.count(pos)) {
      throw ContractError("unfillable position " + std::to_string(pos) +
                          " is not a slot of template " + tmpl.doc_id);
    }
  }

  std::vector<std::string> words;
  for (size_t i = 0; i < tmpl.items.size(); ++i) {
    const TemplateItem &item = tmpl.items[i];
    if (const auto *w = std::get_if<WordItem>(&item)) {
      words.push_back(w->form);
      continue;
    }
    int pos = static_cast<int>(i);
    auto it = assignment.chosen.find(pos);
    if (it != assignment.chosen.end()) {
      words.push_back(it->second.name);
    } else if (unfillable.count(pos)) {
      words.push_back(GenericWord(std::get<SlotItem>(item).slot_type));
    } else {
      throw ContractError("slot at position " + std::to_string(pos) +
                          " is neither filled nor unfillable");
    }
  }
  return Detokenize(words);
}

std::string AppendDate(std::string_view caption, const ImageMeta &meta) {
  std::string text(caption);
  if (!meta.exif_date) return text;
  static const std::regex kDated(
      " on (January|February|March|April|May|June|July|August|September|"
      "October|November|December) [0-9]{1,2} [0-9]{4}[.!?]?$");
  if (std::regex_search(text, kDated)) return text;

  std::string terminal = ".";
  while (!text.empty() && text.back() == ' ') text.pop_back();
  if (!text.empty() &&
      (text.back() == '.' || text.back() == '!' || text.back() == '?')) {
    terminal = text.back();
    text.pop_back();
    while (!text.empty() && text.back() == ' ') text.pop_back();
  }
  return text + " on " + FormatCaptionDate(*meta.exif_date) + terminal;
}

}  // namespace entcap
