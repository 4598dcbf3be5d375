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

#include <sstream>

#include "entcap/error.h"
#include "entcap/parse.h"

#include "doctest.h"

namespace entcap {
namespace {

const char *kTwoBlocks =
    "# sent_id = s1\n"
    "# text = Dogs bark .\n"
    "1\tDogs\t_\t_\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tbark\t_\t_\t_\t_\t0\troot\t_\t_\n"
    "3\t.\t_\t_\t_\t_\t2\tpunct\t_\t_\n"
    "\n"
    "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "1\tdo\t_\t_\t_\t_\t0\troot\t_\t_\n"
    "2\tn't\t_\t_\t_\t_\t1\tneg\t_\t_\n"
    "2.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n";

TEST_CASE("reads blocks, ids and comments") {
  std::istringstream in(kTwoBlocks);
  auto parses = ReadConllu(in, "p.conllu");
  REQUIRE(parses.size() == 2);
  CHECK(parses[0].doc_id == "s1");
  CHECK(parses[0].Text() == "Dogs bark .");
  CHECK(parses[0].tokens[0].deprel == "nsubj");
  CHECK(parses[0].tokens[2].head == 2);
  CHECK(parses[0].comments == std::vector<std::string>{"# text = Dogs bark ."});
  // Ordinal fallback; range and empty node skipped.
  CHECK(parses[1].doc_id == "2");
  CHECK(parses[1].tokens.size() == 2);
}

TEST_CASE("round trip") {
  std::istringstream in(kTwoBlocks);
  auto parses = ReadConllu(in);
  std::ostringstream out;
  WriteConllu(out, parses[0]);
  std::istringstream back(out.str());
  auto again = ReadConllu(back);
  REQUIRE(again.size() == 1);
  CHECK(again[0].doc_id == "s1");
  CHECK(again[0].Text() == parses[0].Text());
  CHECK(again[0].tokens[0].head == 2);
}

TEST_CASE("malformed rows name the file and line") {
  std::istringstream in(
      "# sent_id = a\n"
      "1\tx\t_\t_\t_\t_\t0\troot\t_\t_\n"
      "2\ty\t_\t_\t_\t_\t1\n");
  try {
    ReadConllu(in, "bad.conllu");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("bad.conllu:3") != std::string::npos);
  }
  std::istringstream head("1\tx\t_\t_\t_\t_\tnine\troot\t_\t_\n");
  CHECK_THROWS_AS(ReadConllu(head), ParseError);
}

ParsedCaption Tiny() {
  ParsedCaption p;
  p.doc_id = "t";
  p.tokens = {{1, "Eric", 2, "nn", {}}, {2, "Bailly", 3, "nsubj", {}},
              {3, "pours", 0, "root", {}}};
  p.mentions = {{1, 2, "Eric Bailly", CoarseType::kPerson}};
  return p;
}

TEST_CASE("structural validation") {
  CHECK_NOTHROW(ValidateParse(Tiny()));

  ParsedCaption two_roots = Tiny();
  two_roots.tokens[0].head = 0;
  CHECK_THROWS_AS(ValidateParse(two_roots), StructuralError);

  ParsedCaption cycle = Tiny();
  cycle.tokens[0].head = 2;
  cycle.tokens[1].head = 1;
  CHECK_THROWS_AS(ValidateParse(cycle), StructuralError);

  ParsedCaption self = Tiny();
  self.tokens[0].head = 1;
  CHECK_THROWS_AS(ValidateParse(self), StructuralError);

  ParsedCaption out_of_range = Tiny();
  out_of_range.tokens[0].head = 7;
  CHECK_THROWS_AS(ValidateParse(out_of_range), StructuralError);

  ParsedCaption gap = Tiny();
  gap.tokens[2].index = 4;
  CHECK_THROWS_AS(ValidateParse(gap), StructuralError);

  ParsedCaption bad_span = Tiny();
  bad_span.mentions[0].end = 4;
  CHECK_THROWS_AS(ValidateParse(bad_span), StructuralError);

  ParsedCaption bad_surface = Tiny();
  bad_surface.mentions[0].surface = "Eric";
  CHECK_THROWS_AS(ValidateParse(bad_surface), StructuralError);

  ParsedCaption overlap = Tiny();
  overlap.mentions.push_back({2, 2, "Bailly", CoarseType::kPerson});
  CHECK_THROWS_AS(ValidateParse(overlap), StructuralError);
}

}  // namespace
}  // namespace entcap
