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

#include "entcap/cli.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "entcap/config.h"
#include "entcap/error.h"
#include "entcap/jsonio.h"
#include "entcap/pipeline.h"
#include "entcap/qcv.h"

namespace entcap {

namespace {

// Flags shared by all subcommands, plus config overrides.
struct CommonFlags {
  std::string config_path;
  int jobs = 1;
  std::optional<unsigned long> seed;

  std::optional<int> window_days;
  std::optional<int> tag_freq_cap;
  std::optional<int> top_k;
  std::optional<std::string> relations;
  std::optional<bool> allow_duplicates;
  std::optional<int> beam_width;
  std::optional<int> max_exhaustive_slots;
  std::optional<int> min_caption_tokens;
  std::optional<double> fuzzy_threshold;

  void Register(CLI::App *cmd) {
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "seed for randomized checks");
    cmd->add_option("--window-days", window_days);
    cmd->add_option("--tag-freq-cap", tag_freq_cap);
    cmd->add_option("--top-k", top_k);
    cmd->add_option("--relations", relations, "comma-separated whitelist");
    cmd->add_option("--allow-duplicates", allow_duplicates);
    cmd->add_option("--beam-width", beam_width);
    cmd->add_option("--max-exhaustive-slots", max_exhaustive_slots);
    cmd->add_option("--min-caption-tokens", min_caption_tokens);
    cmd->add_option("--fuzzy-threshold", fuzzy_threshold);
  }

  PipelineConfig Resolve() const {
    PipelineConfig c =
        config_path.empty() ? PipelineConfig() : LoadConfigFile(config_path);
    if (window_days) c.window_days = *window_days;
    if (tag_freq_cap) c.tag_freq_cap = *tag_freq_cap;
    if (top_k) c.top_k = *top_k;
    if (relations) c.relation_whitelist = ParseRelationList(*relations);
    if (allow_duplicates) c.allow_duplicates = *allow_duplicates;
    if (beam_width) c.beam_width = *beam_width;
    if (max_exhaustive_slots) c.max_exhaustive_slots = *max_exhaustive_slots;
    if (min_caption_tokens) c.min_caption_tokens = *min_caption_tokens;
    if (fuzzy_threshold) c.fuzzy_threshold = *fuzzy_threshold;
    c.Validate();
    return c;
  }
};

std::ifstream OpenIn(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file", 0, path);
  return in;
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file " + path);
  return out;
}

struct TemplatizeArgs {
  std::string captions, parses, mentions, types, out;
};

struct FillArgs {
  std::string templates, queries, posts, types, out;
};

struct EvalArgs {
  std::string captions, references, out;
};

int DoTemplatize(const TemplatizeArgs &a, const PipelineConfig &config, int jobs,
                 std::ostream &log) {
  TypeSystem ts = a.types.empty() ? TypeSystem() : TypeSystem::LoadFile(a.types);
  std::vector<CaptionRecord> corpus =
      LoadCaptionCorpus(a.captions, a.parses, a.mentions);
  TemplatizeResult result = TemplatizeCorpus(corpus, ts, config, jobs);
  std::ofstream out = OpenOut(a.out);
  WriteTemplates(out, result.templates);
  log << "templatize: input=" << result.input << " skipped=" << result.skipped
      << " emitted=" << result.templates.size() << "\n";
  return kExitOk;
}

int DoFill(const FillArgs &a, const PipelineConfig &config, int jobs,
           std::ostream &log) {
  TypeSystem ts = a.types.empty() ? TypeSystem() : TypeSystem::LoadFile(a.types);
  std::ifstream tin = OpenIn(a.templates);
  std::vector<Template> templates = ReadTemplates(tin, a.templates);
  std::ifstream qin = OpenIn(a.queries);
  std::map<std::string, QueryMeta> queries = ReadQueries(qin, a.queries);
  std::ifstream pin = OpenIn(a.posts);
  PostIndex index = ReadPosts(pin, a.posts, ts);

  std::vector<FilledCaption> captions =
      FillAll(templates, queries, index, ts, config, jobs);
  std::ofstream out = OpenOut(a.out);
  for (const FilledCaption &c : captions) out << DumpLine(FilledToJson(c)) << "\n";
  log << "fill: templates=" << templates.size() << " captions=" << captions.size()
      << "\n";
  return kExitOk;
}

int DoEval(const EvalArgs &a, const PipelineConfig &config, std::ostream &log,
           std::ostream &warn) {
  std::ifstream rin = OpenIn(a.references);
  std::map<std::string, ReferenceRecord> refs = ReadReferences(rin, a.references);
  std::ifstream cin = OpenIn(a.captions);
  std::vector<FilledCaption> captions;
  ReadJsonl(cin, a.captions, [&](const Json &j, int) {
    captions.push_back(FilledFromJson(j));
  });

  EvalRun run = EvaluateCaptions(captions, refs, config);
  for (const std::string &id : run.unmatched) {
    warn << "warning: no reference for doc_id " << id << "; excluded\n";
  }
  ReportOptions options;
  options.fuzzy_threshold = config.fuzzy_threshold;
  std::ofstream out = OpenOut(a.out);
  out << ReportToJson(run.report, options).dump(2) << "\n";
  log << "eval: pairs=" << run.report.n << " unmatched=" << run.unmatched.size()
      << "\n";
  return kExitOk;
}

int DoCandidates(const std::string &queries_path, const std::string &posts_path,
                 const std::string &types_path, const std::string &out_path,
                 const PipelineConfig &config, std::ostream &log) {
  TypeSystem ts =
      types_path.empty() ? TypeSystem() : TypeSystem::LoadFile(types_path);
  std::ifstream qin = OpenIn(queries_path);
  std::map<std::string, QueryMeta> queries = ReadQueries(qin, queries_path);
  std::ifstream pin = OpenIn(posts_path);
  PostIndex index = ReadPosts(pin, posts_path, ts);
  std::ofstream out = OpenOut(out_path);
  for (const auto &[id, q] : queries) {
    out << DumpLine(CandidateReportToJson(ComputeCandidates(q, index, ts, config)))
        << "\n";
  }
  log << "candidates: queries=" << queries.size() << "\n";
  return kExitOk;
}

bool SameAssignment(const Assignment &a, const Assignment &b) {
  if (a.unfillable != b.unfillable || a.chosen.size() != b.chosen.size()) {
    return false;
  }
  for (const auto &[pos, c] : a.chosen) {
    auto it = b.chosen.find(pos);
    if (it == b.chosen.end() || it->second.key != c.key) return false;
  }
  return std::abs(a.score - b.score) <= kScoreTolerance && a.ties == b.ties;
}

int CheckInstance(const QcvInstance &inst, std::ostream &log,
                  const std::string &label) {
  SolveOptions options;
  options.allow_duplicates = inst.allow_duplicates;
  Assignment fast = Solve(inst.slots, inst.pool, inst.stats, options);
  Assignment slow =
      SolveBruteforce(inst.slots, inst.pool, inst.stats, inst.allow_duplicates);
  if (SameAssignment(fast, slow)) return kExitOk;
  log << "MISMATCH " << label << "\n  solve: " << AssignmentToJson(fast).dump()
      << "\n  bruteforce: " << AssignmentToJson(slow).dump()
      << "\n  instance: " << InstanceToJson(inst).dump() << "\n";
  return kExitFailure;
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"entcap: typed caption templates, slot filling and "
               "caption evaluation"};
  app.require_subcommand(1);

  CommonFlags flags;
  TemplatizeArgs tz;
  FillArgs fill;
  EvalArgs ev;
  std::string cand_queries, cand_posts, cand_types, cand_out;
  std::string pl_references, pl_out_dir;
  std::string oracle_instance;
  int oracle_random = 0;

  CLI::App *cmd_tz = app.add_subcommand("templatize", "captions -> templates");
  flags.Register(cmd_tz);
  cmd_tz->add_option("--captions", tz.captions, "captions JSONL")->required();
  cmd_tz->add_option("--parses", tz.parses, "CoNLL-U parses")->required();
  cmd_tz->add_option("--mentions", tz.mentions, "mention sidecar JSONL");
  cmd_tz->add_option("--types", tz.types, "type-map TSV");
  cmd_tz->add_option("--out", tz.out, "templates JSONL")->required();

  CLI::App *cmd_cand =
      app.add_subcommand("candidates", "queries -> candidate pools and stats");
  flags.Register(cmd_cand);
  cmd_cand->add_option("--queries", cand_queries)->required();
  cmd_cand->add_option("--posts", cand_posts)->required();
  cmd_cand->add_option("--types", cand_types);
  cmd_cand->add_option("--out", cand_out)->required();

  CLI::App *cmd_fill = app.add_subcommand("fill", "templates -> captions");
  flags.Register(cmd_fill);
  cmd_fill->add_option("--templates", fill.templates)->required();
  cmd_fill->add_option("--queries", fill.queries)->required();
  cmd_fill->add_option("--posts", fill.posts)->required();
  cmd_fill->add_option("--types", fill.types);
  cmd_fill->add_option("--out", fill.out)->required();

  CLI::App *cmd_eval = app.add_subcommand("eval", "captions -> metric report");
  flags.Register(cmd_eval);
  cmd_eval->add_option("--captions", ev.captions)->required();
  cmd_eval->add_option("--references", ev.references)->required();
  cmd_eval->add_option("--out", ev.out)->required();

  CLI::App *cmd_pl =
      app.add_subcommand("pipeline", "templatize, fill and eval in one run");
  flags.Register(cmd_pl);
  cmd_pl->add_option("--captions", tz.captions)->required();
  cmd_pl->add_option("--parses", tz.parses)->required();
  cmd_pl->add_option("--mentions", tz.mentions);
  cmd_pl->add_option("--types", tz.types);
  cmd_pl->add_option("--queries", fill.queries)->required();
  cmd_pl->add_option("--posts", fill.posts)->required();
  cmd_pl->add_option("--references", pl_references);
  cmd_pl->add_option("--out-dir", pl_out_dir)->required();

  CLI::App *cmd_oracle = app.add_subcommand(
      "oracle-check", "compare the exhaustive solver with the brute-force oracle");
  flags.Register(cmd_oracle);
  auto *inst_opt = cmd_oracle->add_option("--instance", oracle_instance,
                                          "instance JSON {slots, pool, stats}");
  auto *rand_opt = cmd_oracle->add_option("--random", oracle_random,
                                          "check N random instances");
  inst_opt->excludes(rand_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "entcap: " << e.what() << "\n";
    return kExitInputFormat;
  }

  if (*cmd_oracle && inst_opt->count() == 0 && rand_opt->count() == 0) {
    err << "entcap: oracle-check needs --instance or --random\n";
    return kExitInputFormat;
  }

  try {
    PipelineConfig config = flags.Resolve();
    if (*cmd_tz) return DoTemplatize(tz, config, flags.jobs, out);
    if (*cmd_cand) {
      return DoCandidates(cand_queries, cand_posts, cand_types, cand_out, config,
                          out);
    }
    if (*cmd_fill) return DoFill(fill, config, flags.jobs, out);
    if (*cmd_eval) return DoEval(ev, config, out, err);
    if (*cmd_pl) {
      // Same stage functions and files as chaining the subcommands by hand.
      std::filesystem::create_directories(pl_out_dir);
      std::filesystem::path dir(pl_out_dir);
      tz.out = (dir / "templates.jsonl").string();
      DoTemplatize(tz, config, flags.jobs, out);
      fill.templates = tz.out;
      fill.types = tz.types;
      fill.out = (dir / "captions.jsonl").string();
      DoFill(fill, config, flags.jobs, out);
      if (!pl_references.empty()) {
        ev.captions = fill.out;
        ev.references = pl_references;
        ev.out = (dir / "report.json").string();
        DoEval(ev, config, out, err);
      }
      return kExitOk;
    }
    if (*cmd_oracle) {
      if (!oracle_instance.empty()) {
        std::ifstream in = OpenIn(oracle_instance);
        Json j;
        try {
          j = Json::parse(in);
        } catch (const Json::parse_error &e) {
          throw ParseError(std::string("invalid JSON: ") + e.what(), 0,
                           oracle_instance);
        }
        QcvInstance inst;
        try {
          inst = InstanceFromJson(j);
        } catch (const Json::exception &e) {
          throw SchemaError(e.what());
        }
        int status = CheckInstance(inst, err, oracle_instance);
        if (status == kExitOk) {
          SolveOptions options;
          options.allow_duplicates = inst.allow_duplicates;
          out << AssignmentToJson(Solve(inst.slots, inst.pool, inst.stats, options))
                     .dump()
              << "\n";
        }
        return status;
      }
      std::mt19937_64 rng(flags.seed.value_or(1));
      int failures = 0;
      for (int i = 0; i < oracle_random; ++i) {
        QcvInstance inst = RandomInstance(rng);
        if (CheckInstance(inst, err, "random #" + std::to_string(i)) != kExitOk) {
          ++failures;
        }
      }
      out << "oracle-check: instances=" << oracle_random
          << " mismatches=" << failures << "\n";
      return failures == 0 ? kExitOk : kExitFailure;
    }
  } catch (const CapacityError &e) {
    err << "entcap: " << e.what() << " (e.g. --beam-width 25)\n";
    return kExitFailure;
  } catch (const ParseError &e) {
    err << "entcap: " << e.what() << "\n";
    return kExitInputFormat;
  } catch (const SchemaError &e) {
    err << "entcap: " << e.what() << "\n";
    return kExitInputFormat;
  } catch (const StructuralError &e) {
    err << "entcap: " << e.what() << "\n";
    return kExitInputFormat;
  } catch (const std::exception &e) {
    err << "entcap: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace entcap
