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

#include "entcap/pipeline.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <thread>

#include "entcap/error.h"
#include "entcap/parse.h"
#include "entcap/qcv.h"
#include "entcap/text.h"

namespace entcap {

namespace {

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file", 0, path);
  return in;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void ParallelFor(size_t n, int jobs, Fn fn) {
  size_t workers = std::min(n, static_cast<size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      try {
        for (size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread &t : threads) t.join();
  for (const std::exception_ptr &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::string> StringList(const Json &j, const char *key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const Json &arr = j.at(key);
  if (!arr.is_array()) throw SchemaError(std::string("'") + key + "' must be an array");
  for (const Json &v : arr) {
    if (!v.is_string()) throw SchemaError(std::string("'") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Date DateField(const Json &j, const char *key) {
  std::string text = j.at(key).get<std::string>();
  auto d = ParseDate(text);
  if (!d) throw SchemaError(std::string("bad ") + key + " '" + text + "'");
  return *d;
}

}  // namespace

std::vector<CaptionRecord> LoadCaptionCorpus(const std::string &captions_path,
                                             const std::string &parses_path,
                                             const std::string &mentions_path) {
  std::map<std::string, std::string> captions;
  std::vector<std::string> order;
  {
    std::ifstream in = OpenInput(captions_path);
    ReadJsonl(in, captions_path, [&](const Json &j, int) {
      std::string id = j.at("doc_id").get<std::string>();
      if (!captions.emplace(id, j.at("caption").get<std::string>()).second) {
        throw SchemaError("duplicate caption doc_id '" + id + "'");
      }
      order.push_back(id);
    });
  }

  std::map<std::string, ParsedCaption> parses;
  {
    std::ifstream in = OpenInput(parses_path);
    for (ParsedCaption &p : ReadConllu(in, parses_path)) {
      std::string id = p.doc_id;
      if (!captions.count(id)) {
        throw ParseError("parse for unknown doc_id '" + id + "'", 0, parses_path);
      }
      if (!parses.emplace(id, std::move(p)).second) {
        throw ParseError("duplicate parse for doc_id '" + id + "'", 0, parses_path);
      }
    }
  }

  if (!mentions_path.empty()) {
    std::ifstream in = OpenInput(mentions_path);
    ReadJsonl(in, mentions_path, [&](const Json &j, int) {
      MentionRecord m = MentionFromJson(j);
      auto it = parses.find(m.doc_id);
      if (it == parses.end()) {
        throw SchemaError("mention for unknown doc_id '" + m.doc_id + "'");
      }
      it->second.mentions.push_back(std::move(m.mention));
    });
  }

  std::vector<CaptionRecord> corpus;
  std::sort(order.begin(), order.end());
  for (const std::string &id : order) {
    auto it = parses.find(id);
    if (it == parses.end()) {
      throw ParseError("caption '" + id + "' has no parse", 0, parses_path);
    }
    std::sort(it->second.mentions.begin(), it->second.mentions.end(),
              [](const EntityMention &a, const EntityMention &b) {
                return a.start < b.start;
              });
    corpus.push_back({id, captions[id], std::move(it->second)});
  }
  return corpus;
}

TemplatizeResult TemplatizeCorpus(const std::vector<CaptionRecord> &corpus,
                                  const TypeSystem &ts,
                                  const PipelineConfig &config, int jobs) {
  TemplatizeOptions options;
  options.whitelist = config.relation_whitelist;
  options.min_tokens = config.min_caption_tokens;

  std::vector<TemplatizeResult> parts(corpus.size());
  ParallelFor(corpus.size(), jobs, [&](size_t i) {
    parts[i] = BuildPairs({corpus[i]}, ts, options);
  });
  TemplatizeResult result;
  for (TemplatizeResult &part : parts) {
    result.input += part.input;
    result.skipped += part.skipped;
    for (Template &t : part.templates) result.templates.push_back(std::move(t));
  }
  std::stable_sort(result.templates.begin(), result.templates.end(),
                   [](const Template &a, const Template &b) {
                     return a.doc_id < b.doc_id;
                   });
  return result;
}

void WriteTemplates(std::ostream &out, const std::vector<Template> &templates) {
  for (const Template &t : templates) out << DumpLine(TemplateToJson(t)) << "\n";
}

std::vector<Template> ReadTemplates(std::istream &in, const std::string &source) {
  std::vector<Template> out;
  ReadJsonl(in, source, [&](const Json &j, int) {
    out.push_back(TemplateFromJson(j));
  });
  return out;
}

std::map<std::string, QueryMeta> ReadQueries(std::istream &in,
                                             const std::string &source) {
  std::map<std::string, QueryMeta> out;
  ReadJsonl(in, source, [&](const Json &j, int) {
    QueryMeta q;
    q.doc_id = j.at("doc_id").get<std::string>();
    if (j.contains("post_id")) q.query.id = j.at("post_id").get<std::string>();
    for (const std::string &tag : StringList(j, "tags")) {
      std::string t = NormalizeTag(tag);
      if (!t.empty()) q.query.tags.insert(t);
    }
    q.query.taken_date = DateField(j, "taken_date");
    if (j.contains("exif_date") && !j.at("exif_date").is_null()) {
      q.image.exif_date = DateField(j, "exif_date");
    }
    if (j.contains("geo") && !j.at("geo").is_null()) {
      const Json &g = j.at("geo");
      q.image.geo = {g.at(0).get<double>(), g.at(1).get<double>()};
    }
    if (!out.emplace(q.doc_id, q).second) {
      throw SchemaError("duplicate query doc_id '" + q.doc_id + "'");
    }
  });
  return out;
}

PostIndex ReadPosts(std::istream &in, const std::string &source,
                    const TypeSystem &ts) {
  Gazetteer gazetteer(ts);
  std::vector<Post> posts;
  ReadJsonl(in, source, [&](const Json &j, int) {
    PostRecord r = PostFromJson(j);
    if (!r.has_mentions) r.post.mentions = gazetteer.Match(r.post.text);
    posts.push_back(std::move(r.post));
  });
  return PostIndex(std::move(posts));
}

CandidateReport ComputeCandidates(const QueryMeta &query, const PostIndex &index,
                                  const TypeSystem &ts,
                                  const PipelineConfig &config) {
  RetrievalOptions retrieval;
  retrieval.window_days = config.window_days;
  retrieval.tag_freq_cap = config.tag_freq_cap;
  std::vector<Post> context = RetrieveContext(query.query, index, retrieval);

  CandidateReport report;
  report.doc_id = query.doc_id;
  for (const Post &p : context) report.context_ids.push_back(p.id);
  report.pool = ExtractCandidates(context, ts, config.top_k);
  report.stats = Cooccurrence(context);
  return report;
}

Json CandidateReportToJson(const CandidateReport &report) {
  return {{"doc_id", report.doc_id},
          {"context", report.context_ids},
          {"pool", PoolToJson(report.pool)},
          {"stats", StatsToJson(report.stats)}};
}

Json FilledToJson(const FilledCaption &c) {
  return {{"doc_id", c.doc_id},
          {"caption", c.caption},
          {"omega", c.omega},
          {"unfillable", c.unfillable},
          {"entities", c.entities}};
}

FilledCaption FilledFromJson(const Json &j) {
  FilledCaption c;
  c.doc_id = j.at("doc_id").get<std::string>();
  c.caption = j.at("caption").get<std::string>();
  if (j.contains("omega")) c.omega = j.at("omega").get<double>();
  c.unfillable = StringList(j, "unfillable");
  c.entities = StringList(j, "entities");
  return c;
}

FilledCaption FillTemplate(const Template &tmpl, const QueryMeta &query,
                           const PostIndex &index, const TypeSystem &ts,
                           const PipelineConfig &config) {
  CandidateReport candidates = ComputeCandidates(query, index, ts, config);

  std::vector<SlotRef> slots;
  for (int pos : tmpl.SlotPositions()) {
    slots.push_back({pos, std::get<SlotItem>(tmpl.items[pos]).slot_type});
  }
  SolveOptions options;
  options.allow_duplicates = config.allow_duplicates;
  options.max_exhaustive_slots = config.max_exhaustive_slots;
  options.beam_width = config.beam_width;
  Assignment assignment;
  try {
    assignment = Solve(slots, candidates.pool, candidates.stats, options);
  } catch (const CapacityError &e) {
    throw CapacityError("template " + tmpl.doc_id + ": " + e.what());
  }

  FilledCaption out;
  out.doc_id = tmpl.doc_id;
  out.caption = AppendDate(Fill(tmpl, assignment), query.image);
  out.omega = assignment.score;
  for (int pos : assignment.unfillable) {
    out.unfillable.push_back(std::get<SlotItem>(tmpl.items[pos]).slot_type.name);
  }
  for (const auto &[pos, c] : assignment.chosen) out.entities.push_back(c.name);
  return out;
}

std::vector<FilledCaption> FillAll(const std::vector<Template> &templates,
                                   const std::map<std::string, QueryMeta> &queries,
                                   const PostIndex &index, const TypeSystem &ts,
                                   const PipelineConfig &config, int jobs) {
  for (const Template &t : templates) {
    if (!queries.count(t.doc_id)) {
      throw SchemaError("no query metadata for template '" + t.doc_id + "'");
    }
  }
  std::vector<FilledCaption> out(templates.size());
  ParallelFor(templates.size(), jobs, [&](size_t i) {
    out[i] = FillTemplate(templates[i], queries.at(templates[i].doc_id), index,
                          ts, config);
  });
  std::stable_sort(out.begin(), out.end(),
                   [](const FilledCaption &a, const FilledCaption &b) {
                     return a.doc_id < b.doc_id;
                   });
  return out;
}

std::map<std::string, ReferenceRecord> ReadReferences(std::istream &in,
                                                      const std::string &source) {
  std::map<std::string, ReferenceRecord> out;
  ReadJsonl(in, source, [&](const Json &j, int) {
    ReferenceRecord r;
    r.doc_id = j.at("doc_id").get<std::string>();
    r.references = StringList(j, "references");
    if (r.references.empty()) {
      throw SchemaError("doc_id '" + r.doc_id + "' has no references");
    }
    r.entities = StringList(j, "entities");
    if (!out.emplace(r.doc_id, r).second) {
      throw SchemaError("duplicate reference doc_id '" + r.doc_id + "'");
    }
  });
  return out;
}

EvalRun EvaluateCaptions(const std::vector<FilledCaption> &captions,
                         const std::map<std::string, ReferenceRecord> &references,
                         const PipelineConfig &config) {
  EvalRun run;
  std::vector<EvalPair> pairs;
  for (const FilledCaption &c : captions) {
    auto it = references.find(c.doc_id);
    if (it == references.end()) {
      run.unmatched.push_back(c.doc_id);
      continue;
    }
    pairs.push_back(MakeEvalPair(c.doc_id, c.caption, it->second.references,
                                 c.entities, it->second.entities));
  }
  if (pairs.empty()) throw Error("no caption doc_id matches a reference");
  FuzzyMatchConfig fuzzy;
  fuzzy.jaccard_threshold = config.fuzzy_threshold;
  run.report = Evaluate(pairs, fuzzy);
  return run;
}

}  // namespace entcap
