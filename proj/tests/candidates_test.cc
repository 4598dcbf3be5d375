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

#include <algorithm>
#include <fstream>
#include <random>

#include "entcap/candidates.h"
#include "entcap/error.h"
#include "entcap/pipeline.h"

#include "doctest.h"

namespace entcap {
namespace {

const std::string kData = ENTCAP_TEST_DATA;

Date D(const char *s) { return *ParseDate(s); }

Post MakePost(std::string id, std::set<std::string> tags, const char *date,
              std::vector<std::string> names = {}) {
  Post p;
  p.id = std::move(id);
  for (const std::string &t : tags) p.tags.insert(NormalizeTag(t));
  p.taken_date = D(date);
  for (std::string &n : names) p.mentions.push_back({n, CoarseType::kPerson});
  return p;
}

std::vector<std::string> Ids(const std::vector<Post> &posts) {
  std::vector<std::string> ids;
  for (const Post &p : posts) ids.push_back(p.id);
  return ids;
}

PostIndex JuniorDoctorsIndex(const TypeSystem &ts) {
  std::ifstream in(kData + "/junior_doctors/posts.jsonl");
  return ReadPosts(in, "posts.jsonl", ts);
}

TEST_CASE("tag normalization") {
  CHECK(NormalizeTag("  #NHS ") == "nhs");
  CHECK(NormalizeTag("JuniorDoctorsStrike") == "juniordoctorsstrike");
}

TEST_CASE("duplicate post ids are rejected") {
  CHECK_THROWS_AS(PostIndex({MakePost("a", {"x"}, "2016-01-01"),
                             MakePost("a", {"y"}, "2016-01-02")}),
                  SchemaError);
}

TEST_CASE("junior doctors context") {
  TypeSystem ts = TypeSystem::LoadFile(kData + "/junior_doctors/types.tsv");
  PostIndex index = JuniorDoctorsIndex(ts);
  ContextQuery q{"q0", {"nhs", "juniordoctorsstrike"}, D("2016-04-26")};
  std::vector<Post> ctx = RetrieveContext(q, index);
  // p08 is 24 days out, p09 shares no tag, q0 is the query itself.
  CHECK(Ids(ctx) == std::vector<std::string>{"p01", "p02", "p03", "p04", "p05",
                                             "p06", "p07", "p10"});

  CandidatePool pool = ExtractCandidates(ctx, ts);
  const auto &people = pool.For(SlotType("Person"));
  REQUIRE(people.size() == 2);
  CHECK(people[0].name == "Junior doctors");
  CHECK(people[0].key == "junior doctors");
  CHECK(people[0].freq == 4);
  CHECK(people[1].name == "Jeremy Hunt");
  CHECK(people[1].freq == 3);
  const auto &buildings = pool.For(SlotType("Building"));
  REQUIRE(buildings.size() == 2);
  CHECK(buildings[0].name == "Norfolk and Norwich University Hospital");
  CHECK(buildings[0].freq == 3);
  CHECK(pool.For(SlotType("Nothing")).empty());

  CooccurrenceStats stats = Cooccurrence(ctx);
  CHECK(stats.Unary("colney") == 3);
  CHECK(stats.Pair("colney", "junior doctors") == 3);
  CHECK(stats.Pair("junior doctors", "colney") == 3);
  CHECK(stats.Pair("jeremy hunt", "colney") == 0);
  CHECK_NOTHROW(stats.Validate());
}

TEST_CASE("window and cap") {
  std::vector<Post> posts = {
      MakePost("same", {"a"}, "2016-04-26"),
      MakePost("edge", {"a"}, "2016-05-03"),
      MakePost("past", {"a"}, "2016-05-04"),
      MakePost("before", {"a"}, "2016-04-19"),
  };
  PostIndex index(posts);
  ContextQuery q{"", {"a"}, D("2016-04-26")};
  CHECK(Ids(RetrieveContext(q, index)) ==
        std::vector<std::string>{"before", "edge", "same"});
  CHECK(Ids(RetrieveContext(q, index, {0, 200})) ==
        std::vector<std::string>{"same"});
  // Four posts carry "a"; a cap of 3 drops the tag.
  CHECK(RetrieveContext(q, index, {7, 3}).empty());
  CHECK(RetrieveContext(q, index, {7, 4}).size() == 3);
  CHECK(RetrieveContext({"", {"zzz"}, D("2016-04-26")}, index).empty());
}

TEST_CASE("a common tag contributes nothing") {
  std::vector<Post> posts;
  for (int i = 0; i < 450; ++i) {
    posts.push_back(MakePost("c" + std::to_string(i), {"#concert"}, "2016-04-26"));
  }
  posts.push_back(MakePost("r1", {"#concert", "#adele"}, "2016-04-26"));
  PostIndex index(posts);
  CHECK(index.TagFrequency("#Concert") == 451);
  ContextQuery q{"", {"concert", "adele"}, D("2016-04-26")};
  CHECK(Ids(RetrieveContext(q, index)) == std::vector<std::string>{"r1"});
  ContextQuery only{"", {"concert"}, D("2016-04-26")};
  CHECK(RetrieveContext(only, index).empty());
}

TEST_CASE("retrieval ignores corpus order") {
  TypeSystem ts = TypeSystem::LoadFile(kData + "/junior_doctors/types.tsv");
  PostIndex index = JuniorDoctorsIndex(ts);
  std::vector<Post> shuffled = index.posts();
  std::mt19937_64 rng(3);
  ContextQuery q{"q0", {"nhs", "juniordoctorsstrike"}, D("2016-04-26")};
  auto expected = Ids(RetrieveContext(q, index));
  for (int i = 0; i < 5; ++i) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(Ids(RetrieveContext(q, PostIndex(shuffled))) == expected);
  }
}

TEST_CASE("top-k and ordering") {
  TypeSystem ts;
  std::vector<Post> ctx;
  // Name k appears in k posts; two names tie at freq 1.
  const char *names[] = {"Alpha", "Bravo", "Charlie", "Delta", "Echo", "Foxtrot",
                         "Golf"};
  int id = 0;
  for (int k = 1; k <= 7; ++k) {
    for (int i = 0; i < k; ++i) {
      Post p = MakePost("p" + std::to_string(id++), {"x"}, "2016-01-01");
      p.mentions = {{names[k - 1], CoarseType::kLocation}};
      ctx.push_back(p);
    }
  }
  Post tie = MakePost("p" + std::to_string(id++), {"x"}, "2016-01-01");
  tie.mentions = {{"Aardvark", CoarseType::kLocation}};
  ctx.push_back(tie);

  CandidatePool pool = ExtractCandidates(ctx, ts);
  const auto &loc = pool.For(SlotType(CoarseType::kLocation));
  REQUIRE(loc.size() == 5);
  CHECK(loc[0].name == "Golf");
  CHECK(loc[4].name == "Charlie");

  CandidatePool all = ExtractCandidates(ctx, ts, 10);
  const auto &full = all.For(SlotType(CoarseType::kLocation));
  REQUIRE(full.size() == 8);
  CHECK(full[6].name == "Aardvark");
  CHECK(full[7].name == "Alpha");
  CHECK(ExtractCandidates({}, ts).per_type.empty());
}

TEST_CASE("name counted once per post; display form is the most frequent") {
  TypeSystem ts;
  Post a = MakePost("a", {"x"}, "2016-01-01");
  a.mentions = {{"BMA", CoarseType::kOrganization}, {"bma", CoarseType::kOrganization},
                {"Tories", CoarseType::kOrganization}};
  Post b = MakePost("b", {"x"}, "2016-01-01");
  b.mentions = {{"bma", CoarseType::kOrganization}};
  CandidatePool pool = ExtractCandidates({a, b}, ts);
  const auto &orgs = pool.For(SlotType(CoarseType::kOrganization));
  REQUIRE(orgs.size() == 2);
  CHECK(orgs[0].name == "bma");
  CHECK(orgs[0].freq == 2);

  CooccurrenceStats stats = Cooccurrence({a, b});
  CHECK(stats.Unary("bma") == 2);
  CHECK(stats.Pair("bma", "tories") == 1);
  CHECK(stats.Pair("bma", "bma") == 0);
}

TEST_CASE("gazetteer") {
  TypeSystem ts;
  ts.Add("New York", {"City", CoarseType::kLocation, 4});
  ts.Add("York", {"City", CoarseType::kLocation, 4});
  ts.Add("Tories", {"PoliticalParty", CoarseType::kOrganization, 5});
  ts.Add("Norfolk", {"County", CoarseType::kLocation, 4});

  auto m = GazetteerMatch("Tories outside Norfolk", ts);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == PostMention{"Tories", CoarseType::kOrganization});
  CHECK(m[1] == PostMention{"Norfolk", CoarseType::kLocation});

  auto ny = GazetteerMatch("Rally in new york, then York.", ts);
  REQUIRE(ny.size() == 2);
  CHECK(ny[0].surface == "new york");
  CHECK(ny[1].surface == "York");
  // Token boundaries only.
  CHECK(GazetteerMatch("Yorkshire", ts).empty());
  CHECK(GazetteerMatch("", ts).empty());
}

TEST_CASE("posts without mentions are tagged by the gazetteer") {
  TypeSystem ts = TypeSystem::LoadFile(kData + "/corpus20/types.tsv");
  std::istringstream in(
      R"({"id":"x","tags":["#a"],"taken_date":"2017-06-01","text":"Adele, London"})"
      "\n");
  PostIndex index = ReadPosts(in, "posts.jsonl", ts);
  REQUIRE(index.posts().size() == 1);
  const auto &m = index.posts()[0].mentions;
  REQUIRE(m.size() == 2);
  CHECK(m[0].surface == "Adele");
  CHECK(m[1].coarse == CoarseType::kLocation);
}

TEST_CASE("statistics setters and validation") {
  CooccurrenceStats s;
  s.SetUnary("a", 2);
  s.SetUnary("b", 3);
  s.SetPair("b", "a", 2);
  CHECK(s.Pair("a", "b") == 2);
  CHECK_NOTHROW(s.Validate());
  CHECK_THROWS_AS(s.SetPair("a", "a", 1), DomainError);
  s.SetPair("a", "b", 3);
  CHECK_THROWS_AS(s.Validate(), DomainError);
}

TEST_CASE("pair never exceeds the smaller unary") {
  std::mt19937_64 rng(11);
  const char *names[] = {"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::string>> posts(rng() % 12);
    CooccurrenceStats s;
    for (auto &p : posts) {
      int k = static_cast<int>(rng() % 5);
      for (int i = 0; i < k; ++i) p.push_back(names[rng() % 6]);
      s.AddPost(p);
    }
    CHECK_NOTHROW(s.Validate());
    for (const auto &[pair, n] : s.pairs()) {
      CHECK(n <= std::min(s.Unary(pair.first), s.Unary(pair.second)));
      // Direct recount.
      long both = 0;
      for (const auto &p : posts) {
        bool x = std::find(p.begin(), p.end(), pair.first) != p.end();
        bool y = std::find(p.begin(), p.end(), pair.second) != p.end();
        both += x && y;
      }
      CHECK(n == both);
    }
  }
}

}  // namespace
}  // namespace entcap
