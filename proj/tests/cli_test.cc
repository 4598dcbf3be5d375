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

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "entcap/cli.h"
#include "entcap/jsonio.h"

#include "doctest.h"

namespace entcap {
namespace {

namespace fs = std::filesystem;

const std::string kData = ENTCAP_TEST_DATA;
const std::string kJd = kData + "/junior_doctors";
const std::string kC20 = kData + "/corpus20";

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "entcap");
  std::vector<const char *> argv;
  for (const std::string &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void Write(const fs::path &p, const std::string &text) {
  std::ofstream(p, std::ios::binary) << text;
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  Scratch() {
    static int counter = 0;
    dir = fs::temp_directory_path() /
          ("entcap_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string &name) const { return (dir / name).string(); }
};

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST_CASE("templatize champagne") {
  Scratch s;
  Result r = Cli({"templatize", "--captions", kData + "/champagne/captions.jsonl",
                  "--parses", kData + "/champagne/parses.conllu", "--mentions",
                  kData + "/champagne/mentions.jsonl", "--types",
                  kData + "/champagne/types.tsv", "--out", s / "t.jsonl"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("input=1 skipped=0 emitted=1") != std::string::npos);
  auto lines = Lines(Slurp(s / "t.jsonl"));
  REQUIRE(lines.size() == 1);
  CHECK(TemplateFromJson(Json::parse(lines[0])).ToString() ==
        "<Athlete> pours champagne over <Athlete> .");
}

TEST_CASE("templatize empty input") {
  Scratch s;
  Write(s / "c.jsonl", "");
  Write(s / "p.conllu", "");
  Result r = Cli({"templatize", "--captions", s / "c.jsonl", "--parses",
                  s / "p.conllu", "--out", s / "t.jsonl"});
  CHECK(r.code == 0);
  CHECK(fs::exists(s / "t.jsonl"));
  CHECK(Slurp(s / "t.jsonl").empty());
}

TEST_CASE("malformed conllu exits 2 naming file and line") {
  Scratch s;
  Write(s / "c.jsonl", "{\"doc_id\":\"a\",\"caption\":\"x\"}\n");
  Write(s / "bad.conllu",
        "# sent_id = a\n"
        "1\tx\t_\t_\t_\t_\t0\troot\t_\t_\n"
        "2\ty\t_\t_\n");
  Result r = Cli({"templatize", "--captions", s / "c.jsonl", "--parses",
                  s / "bad.conllu", "--out", s / "t.jsonl"});
  CHECK(r.code == 2);
  CHECK(r.err.find("bad.conllu:3") != std::string::npos);
}

TEST_CASE("usage errors and missing files exit 2") {
  CHECK(Cli({"templatize"}).code == 2);
  CHECK(Cli({"frobnicate"}).code == 2);
  Scratch s;
  Result r = Cli({"templatize", "--captions", s / "none.jsonl", "--parses",
                  s / "none.conllu", "--out", s / "t.jsonl"});
  CHECK(r.code == 2);
  CHECK(Cli({"--help"}).code == 0);
}

std::vector<std::string> FillArgs(const std::string &templates,
                                  const std::string &out) {
  return {"fill",  "--templates", templates,         "--queries",
          kJd + "/queries.jsonl", "--posts", kJd + "/posts.jsonl",
          "--types", kJd + "/types.tsv", "--out", out};
}

TEST_CASE("fill junior doctors") {
  Scratch s;
  Result r = Cli(FillArgs(kJd + "/templates.jsonl", s / "c.jsonl"));
  REQUIRE(r.code == 0);
  auto lines = Lines(Slurp(s / "c.jsonl"));
  REQUIRE(lines.size() == 1);
  Json j = Json::parse(lines[0]);
  CHECK(j["caption"] ==
        "Junior doctors holding signs protest against Tories outside Norfolk and "
        "Norwich University Hospital in Colney on April 26 2016.");
  CHECK(j["omega"].get<double>() == doctest::Approx(41.0 / 12.0));
  CHECK(j["unfillable"].empty());
}

TEST_CASE("empty pools give generic words") {
  Scratch s;
  Write(s / "t.jsonl",
        R"({"doc_id":"nhs_protest","items":[{"slot":"Athlete"},{"w":"meets"},)"
        R"({"slot":"Writer"},{"w":"."}]})"
        "\n");
  Result r = Cli(FillArgs(s / "t.jsonl", s / "c.jsonl"));
  REQUIRE(r.code == 0);
  Json j = Json::parse(Lines(Slurp(s / "c.jsonl"))[0]);
  CHECK(j["caption"] == "Athlete meets Writer on April 26 2016.");
  CHECK(j["unfillable"] == Json::array({"Athlete", "Writer"}));
  CHECK(j["omega"] == 0.0);
}

TEST_CASE("nine fillable slots need a beam") {
  Scratch s;
  Json items = Json::array();
  const char *types[] = {"Person", "Organization", "Location"};
  for (int i = 0; i < 9; ++i) {
    if (i) items.push_back({{"w", "and"}});
    items.push_back({{"slot", types[i % 3]}});
  }
  Write(s / "t.jsonl", Json{{"doc_id", "nhs_protest"}, {"items", items}}.dump() + "\n");
  Result r = Cli(FillArgs(s / "t.jsonl", s / "c.jsonl"));
  CHECK(r.code == 1);
  CHECK(r.err.find("beam") != std::string::npos);

  auto args = FillArgs(s / "t.jsonl", s / "c.jsonl");
  args.insert(args.end(), {"--beam-width", "8"});
  CHECK(Cli(args).code == 0);

  Write(s / "beam.conf", "beam_width = 8\n");
  args = FillArgs(s / "t.jsonl", s / "c.jsonl");
  args.insert(args.end(), {"--config", s / "beam.conf"});
  CHECK(Cli(args).code == 0);
}

TEST_CASE("flags override the config file") {
  Scratch s;
  // A zero-day window keeps only same-day posts; the flag widens it again.
  Write(s / "narrow.conf", "window_days = 0\n");
  auto args = FillArgs(kJd + "/templates.jsonl", s / "narrow.jsonl");
  args.insert(args.end(), {"--config", s / "narrow.conf"});
  REQUIRE(Cli(args).code == 0);
  args = FillArgs(kJd + "/templates.jsonl", s / "wide.jsonl");
  args.insert(args.end(), {"--config", s / "narrow.conf", "--window-days", "7"});
  REQUIRE(Cli(args).code == 0);
  REQUIRE(Cli(FillArgs(kJd + "/templates.jsonl", s / "default.jsonl")).code == 0);
  CHECK(Slurp(s / "wide.jsonl") == Slurp(s / "default.jsonl"));
  CHECK(Slurp(s / "narrow.jsonl") != Slurp(s / "default.jsonl"));

  Write(s / "bad.conf", "window_days = -3\n");
  args = FillArgs(kJd + "/templates.jsonl", s / "x.jsonl");
  args.insert(args.end(), {"--config", s / "bad.conf"});
  CHECK(Cli(args).code == 2);
}

TEST_CASE("candidates subcommand") {
  Scratch s;
  Result r = Cli({"candidates", "--queries", kJd + "/queries.jsonl", "--posts",
                  kJd + "/posts.jsonl", "--types", kJd + "/types.tsv", "--out",
                  s / "cand.jsonl"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(Lines(Slurp(s / "cand.jsonl"))[0]);
  CHECK(j["doc_id"] == "nhs_protest");
  CHECK(j["context"].size() == 8);
  CHECK(j["pool"]["Person"][0]["name"] == "Junior doctors");
  CHECK(j["pool"]["Person"][0]["freq"] == 4);
}

TEST_CASE("eval") {
  Scratch s;
  // Captions identical to the references.
  Write(s / "c.jsonl",
        R"({"doc_id":"nhs_protest","caption":"Junior doctors hold signs as they protest against the Tories outside the Norfolk and Norwich University Hospital in Colney on April 26 2016.","omega":0.0,"unfillable":[],"entities":["Junior doctors","Tories","Norfolk and Norwich University Hospital","Colney"]})"
        "\n");
  Result r = Cli({"eval", "--captions", s / "c.jsonl", "--references",
                  kJd + "/references.jsonl", "--out", s / "r.json"});
  REQUIRE(r.code == 0);
  Json rep = Json::parse(Slurp(s / "r.json"));
  CHECK(rep["bleu"][0] == 1.0);
  CHECK(rep["rouge_l"].get<double>() == doctest::Approx(1.0));
  CHECK(rep["entity"]["f1"] == 1.0);
  CHECK(rep["cider"].is_null());
  CHECK(rep["meteor"].is_null());

  // Unmatched ids are reported and skipped.
  std::string text = Slurp(s / "c.jsonl");
  Write(s / "extra.jsonl",
        text + R"({"doc_id":"zz","caption":"x","omega":0.0,"unfillable":[],"entities":[]})" "\n");
  r = Cli({"eval", "--captions", s / "extra.jsonl", "--references",
           kJd + "/references.jsonl", "--out", s / "r2.json"});
  CHECK(r.code == 0);
  CHECK(r.err.find("zz") != std::string::npos);
  CHECK(Slurp(s / "r2.json") == Slurp(s / "r.json"));

  Write(s / "only.jsonl",
        R"({"doc_id":"zz","caption":"x","omega":0.0,"unfillable":[],"entities":[]})" "\n");
  CHECK(Cli({"eval", "--captions", s / "only.jsonl", "--references",
             kJd + "/references.jsonl", "--out", s / "r3.json"})
            .code == 1);

  CHECK(Cli({"eval", "--captions", s / "c.jsonl", "--references",
             s / "missing.jsonl", "--out", s / "r4.json"})
            .code == 2);
}

TEST_CASE("pipeline equals chained subcommands") {
  Scratch s;
  std::vector<std::string> common = {"--types", kC20 + "/types.tsv"};
  Result p = Cli({"pipeline", "--captions", kC20 + "/captions.jsonl", "--parses",
                  kC20 + "/parses.conllu", "--mentions", kC20 + "/mentions.jsonl",
                  "--types", kC20 + "/types.tsv", "--queries",
                  kC20 + "/queries.jsonl", "--posts", kC20 + "/posts.jsonl",
                  "--references", kC20 + "/references.jsonl", "--out-dir",
                  s / "pl"});
  REQUIRE(p.code == 0);

  REQUIRE(Cli({"templatize", "--captions", kC20 + "/captions.jsonl", "--parses",
               kC20 + "/parses.conllu", "--mentions", kC20 + "/mentions.jsonl",
               "--types", kC20 + "/types.tsv", "--out", s / "t.jsonl"})
              .code == 0);
  REQUIRE(Cli({"fill", "--templates", s / "t.jsonl", "--queries",
               kC20 + "/queries.jsonl", "--posts", kC20 + "/posts.jsonl",
               "--types", kC20 + "/types.tsv", "--out", s / "c.jsonl"})
              .code == 0);
  REQUIRE(Cli({"eval", "--captions", s / "c.jsonl", "--references",
               kC20 + "/references.jsonl", "--out", s / "r.json"})
              .code == 0);

  CHECK(Slurp(s / "pl/templates.jsonl") == Slurp(s / "t.jsonl"));
  CHECK(Slurp(s / "pl/captions.jsonl") == Slurp(s / "c.jsonl"));
  CHECK(Slurp(s / "pl/report.json") == Slurp(s / "r.json"));
  CHECK(Lines(Slurp(s / "t.jsonl")).size() == 18);
}

TEST_CASE("oracle-check") {
  Result r = Cli({"oracle-check", "--random", "100", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("mismatches=0") != std::string::npos);

  Scratch s;
  Write(s / "i.json",
        R"({"slots":[{"position":0,"slot":"A"},{"position":2,"slot":"B"}],)"
        R"("pool":{"A":[{"name":"x","key":"x","freq":2}],"B":[{"name":"y","key":"y","freq":2}]},)"
        R"("stats":{"unary":{"x":2,"y":2},"pairs":[["x","y",1]]},"allow_duplicates":true})");
  r = Cli({"oracle-check", "--instance", s / "i.json"});
  CHECK(r.code == 0);
  Json a = Json::parse(r.out);
  CHECK(a["omega"] == 0.5);
  CHECK(a["chosen"].size() == 2);

  Write(s / "broken.json", "{");
  CHECK(Cli({"oracle-check", "--instance", s / "broken.json"}).code == 2);
  CHECK(Cli({"oracle-check"}).code == 2);
}

TEST_CASE("the installed binary runs") {
  Scratch s;
  std::string cmd = std::string("'") + ENTCAP_CLI_PATH + "' oracle-check --random 5 > '" +
                    (s / "o.txt") + "' 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(Slurp(s / "o.txt").find("instances=5") != std::string::npos);
}

}  // namespace
}  // namespace entcap
