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

#ifndef ENTCAP_PIPELINE_H_
#define ENTCAP_PIPELINE_H_

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "entcap/candidates.h"
#include "entcap/config.h"
#include "entcap/jsonio.h"
#include "entcap/metrics.h"
#include "entcap/realize.h"
#include "entcap/templatize.h"
#include "entcap/typesys.h"

namespace entcap {

// Stage drivers shared by the command-line subcommands. Every output list is
// sorted by doc_id so results do not depend on the number of workers.

// Joins captions JSONL ({doc_id, caption}), CoNLL-U parses and an optional
// mention sidecar by doc_id. Throws ParseError for unreadable files,
// unknown doc ids, or captions without a parse.
std::vector<CaptionRecord> LoadCaptionCorpus(const std::string &captions_path,
                                             const std::string &parses_path,
                                             const std::string &mentions_path);

TemplatizeResult TemplatizeCorpus(const std::vector<CaptionRecord> &corpus,
                                  const TypeSystem &ts,
                                  const PipelineConfig &config, int jobs = 1);

void WriteTemplates(std::ostream &out, const std::vector<Template> &templates);
std::vector<Template> ReadTemplates(std::istream &in, const std::string &source);

// Per-image query: tags and dates of the image being captioned.
struct QueryMeta {
  std::string doc_id;
  ContextQuery query;
  ImageMeta image;
};

// {doc_id, post_id?, tags, taken_date, exif_date?, geo?: [lat, lon]}.
std::map<std::string, QueryMeta> ReadQueries(std::istream &in,
                                             const std::string &source);

// Posts without a "mentions" key get gazetteer mentions from their text.
PostIndex ReadPosts(std::istream &in, const std::string &source,
                    const TypeSystem &ts);

struct CandidateReport {
  std::string doc_id;
  std::vector<std::string> context_ids;
  CandidatePool pool;
  CooccurrenceStats stats;
};

CandidateReport ComputeCandidates(const QueryMeta &query, const PostIndex &index,
                                  const TypeSystem &ts,
                                  const PipelineConfig &config);
Json CandidateReportToJson(const CandidateReport &report);

struct FilledCaption {
  std::string doc_id;
  std::string caption;
  double omega = 0.0;
  std::vector<std::string> unfillable;  // slot type names, template order
  std::vector<std::string> entities;    // filled candidate names
};

Json FilledToJson(const FilledCaption &c);
FilledCaption FilledFromJson(const Json &j);

// retrieve -> candidates -> co-occurrence -> solve -> fill -> date.
FilledCaption FillTemplate(const Template &tmpl, const QueryMeta &query,
                           const PostIndex &index, const TypeSystem &ts,
                           const PipelineConfig &config);

// Throws SchemaError for a template with no query meta.
std::vector<FilledCaption> FillAll(const std::vector<Template> &templates,
                                   const std::map<std::string, QueryMeta> &queries,
                                   const PostIndex &index, const TypeSystem &ts,
                                   const PipelineConfig &config, int jobs = 1);

struct ReferenceRecord {
  std::string doc_id;
  std::vector<std::string> references;
  std::vector<std::string> entities;
};

// {doc_id, references: [...], entities?: [...]}.
std::map<std::string, ReferenceRecord> ReadReferences(std::istream &in,
                                                      const std::string &source);

struct EvalRun {
  EvalReport report;
  std::vector<std::string> unmatched;  // caption doc_ids without references
};

// Throws Error when no caption has a reference.
EvalRun EvaluateCaptions(const std::vector<FilledCaption> &captions,
                         const std::map<std::string, ReferenceRecord> &references,
                         const PipelineConfig &config);

}  // namespace entcap

#endif  // ENTCAP_PIPELINE_H_
