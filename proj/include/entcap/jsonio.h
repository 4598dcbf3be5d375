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

#ifndef ENTCAP_JSONIO_H_
#define ENTCAP_JSONIO_H_

#include <functional>
#include <istream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "entcap/candidates.h"
#include "entcap/metrics.h"
#include "entcap/parse.h"
#include "entcap/qcv.h"
#include "entcap/templatize.h"

namespace entcap {

using Json = nlohmann::json;

// Calls `fn(record, line)` for each non-blank line. Throws ParseError naming
// `source` and the line for invalid JSON; exceptions thrown by `fn` as
// Error are rethrown as ParseError with the same location.
void ReadJsonl(std::istream &in, const std::string &source,
               const std::function<void(const Json &, int)> &fn);

// Single-line serialization used for every JSONL artifact.
std::string DumpLine(const Json &j);

Json TemplateToJson(const Template &t);
Template TemplateFromJson(const Json &j);

struct MentionRecord {
  std::string doc_id;
  EntityMention mention;
};
MentionRecord MentionFromJson(const Json &j);

// Mentions are optional in the file; nullopt when the key is absent.
struct PostRecord {
  Post post;
  bool has_mentions = false;
};
PostRecord PostFromJson(const Json &j);
Json PostToJson(const Post &p);

Json PoolToJson(const CandidatePool &pool);
CandidatePool PoolFromJson(const Json &j);

// {"unary": {name: n}, "pairs": [[a, b, n], ...]}; names normalized on load.
Json StatsToJson(const CooccurrenceStats &stats);
CooccurrenceStats StatsFromJson(const Json &j);

Json AssignmentToJson(const Assignment &a);

// Input to the oracle-check subcommand.
struct QcvInstance {
  std::vector<SlotRef> slots;
  CandidatePool pool;
  CooccurrenceStats stats;
  bool allow_duplicates = true;
};
QcvInstance InstanceFromJson(const Json &j);
Json InstanceToJson(const QcvInstance &instance);

struct InstanceShape {
  int min_slots = 2;
  int max_slots = 4;
  int min_candidates = 1;
  int max_candidates = 5;
  int num_types = 3;
  int max_unary = 8;
};

// Random instance with valid statistics (pair <= min unary). Slots draw
// their types from `num_types` types, so repeated types occur.
QcvInstance RandomInstance(std::mt19937_64 &rng, const InstanceShape &shape = {});

struct ReportOptions {
  double fuzzy_threshold = 0.5;
};
Json ReportToJson(const EvalReport &report, const ReportOptions &options = {});

}  // namespace entcap

#endif  // ENTCAP_JSONIO_H_
