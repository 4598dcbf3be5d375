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

#include "entcap/parse.h"

#include <charconv>
#include <ostream>
#include <sstream>

#include "entcap/error.h"
#include "entcap/text.h"

namespace entcap {

namespace {

bool ParseInt(const std::string &text, int *value) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string Trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string ParsedCaption::Text() const {
  std::vector<std::string> forms;
  forms.reserve(tokens.size());
  for (const Token &t : tokens) forms.push_back(t.form);
  return Join(forms, " ");
}

void ValidateParse(const ParsedCaption &parse) {
  const int n = static_cast<int>(parse.tokens.size());
  auto fail = [&](const std::string &what) {
    throw StructuralError(
        (parse.doc_id.empty() ? "" : "[" + parse.doc_id + "] ") + what);
  };
  if (n == 0) fail("parse has no tokens");

  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token &t = parse.tokens[i];
    if (t.index != i + 1) {
      fail("token " + std::to_string(i + 1) + " has index " +
           std::to_string(t.index));
    }
    if (t.head < 0 || t.head > n) {
      fail("token " + std::to_string(t.index) + " has out-of-range head " +
           std::to_string(t.head));
    }
    if (t.head == t.index) {
      fail("token " + std::to_string(t.index) + " is its own head");
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) fail("expected exactly one root, found " + std::to_string(roots));

  // Every token must reach the root within n steps.
  for (const Token &t : parse.tokens) {
    int cur = t.index;
    int steps = 0;
    while (cur != 0) {
      cur = parse.tokens[cur - 1].head;
      if (++steps > n) {
        fail("cycle through token " + std::to_string(t.index));
      }
    }
  }

  std::vector<bool> covered(n + 1, false);
  for (const EntityMention &m : parse.mentions) {
    if (m.start < 1 || m.end > n || m.start > m.end) {
      fail("mention '" + m.surface + "' has invalid span [" +
           std::to_string(m.start) + ", " + std::to_string(m.end) + "]");
    }
    std::vector<std::string> forms;
    for (int i = m.start; i <= m.end; ++i) {
      if (covered[i]) fail("mention '" + m.surface + "' overlaps another mention");
      covered[i] = true;
      forms.push_back(parse.tokens[i - 1].form);
    }
    if (Join(forms, " ") != m.surface) {
      fail("mention surface '" + m.surface + "' does not match span text '" +
           Join(forms, " ") + "'");
    }
  }
}

std::vector<ParsedCaption> ReadConllu(std::istream &in,
                                      const std::string &source) {
  std::vector<ParsedCaption> out;
  ParsedCaption current;
  bool open = false;
  int lineno = 0;
  int block_start = 0;

  auto flush = [&]() {
    if (!open) return;
    if (current.tokens.empty()) {
      throw ParseError("sentence block has no token rows", block_start, source);
    }
    if (current.doc_id.empty()) current.doc_id = std::to_string(out.size() + 1);
    out.push_back(std::move(current));
    current = ParsedCaption();
    open = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) {
      flush();
      continue;
    }
    if (!open) {
      open = true;
      block_start = lineno;
    }
    if (line[0] == '#') {
      std::string body = Trim(line.substr(1));
      bool is_id = false;
      for (std::string key : {"sent_id", "doc_id"}) {
        if (body.rfind(key, 0) != 0) continue;
        std::string rest = Trim(body.substr(key.size()));
        if (!rest.empty() && rest[0] == '=') {
          current.doc_id = Trim(rest.substr(1));
          is_id = true;
          break;
        }
      }
      if (!is_id) current.comments.push_back(line);
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, got " +
                           std::to_string(cols.size()),
                       lineno, source);
    }
    // Multiword token ranges ("3-4") and empty nodes ("5.1").
    if (cols[0].find_first_of("-.") != std::string::npos) continue;

    Token tok;
    if (!ParseInt(cols[0], &tok.index)) {
      throw ParseError("bad ID '" + cols[0] + "'", lineno, source);
    }
    if (tok.index != static_cast<int>(current.tokens.size()) + 1) {
      throw ParseError("ID " + cols[0] + " out of sequence", lineno, source);
    }
    if (!ParseInt(cols[6], &tok.head)) {
      throw ParseError("bad HEAD '" + cols[6] + "'", lineno, source);
    }
    tok.form = cols[1];
    tok.deprel = cols[7];
    tok.columns = std::move(cols);
    current.tokens.push_back(std::move(tok));
  }
  flush();
  return out;
}

void WriteConllu(std::ostream &out, const ParsedCaption &parse) {
  out << "# sent_id = " << parse.doc_id << "\n";
  for (const std::string &c : parse.comments) out << c << "\n";
  for (const Token &t : parse.tokens) {
    std::vector<std::string> cols = t.columns;
    if (cols.size() != 10) cols.assign(10, "_");
    cols[0] = std::to_string(t.index);
    cols[1] = t.form;
    cols[6] = std::to_string(t.head);
    cols[7] = t.deprel;
    out << Join(cols, "\t") << "\n";
  }
  out << "\n";
}

}  // namespace entcap
