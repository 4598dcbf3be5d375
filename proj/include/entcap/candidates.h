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

#ifndef ENTCAP_CANDIDATES_H_
#define ENTCAP_CANDIDATES_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "entcap/date.h"
#include "entcap/typesys.h"

namespace entcap {

struct PostMention {
  std::string surface;
  CoarseType coarse = CoarseType::kMiscellaneous;

  bool operator==(const PostMention &) const = default;
};

struct Post {
  std::string id;
  std::set<std::string> tags;  // normalized with NormalizeTag
  Date taken_date;
  std::string text;
  std::vector<PostMention> mentions;
};

// Case-folds, trims and strips leading '#'.
std::string NormalizeTag(std::string_view tag);

// Tag-indexed post corpus. Immutable once built.
class PostIndex {
 public:
  // Throws SchemaError on duplicate post ids.
  explicit PostIndex(std::vector<Post> posts);

  const std::vector<Post> &posts() const { return posts_; }

  // Number of posts carrying `tag` (normalized).
  size_t TagFrequency(std::string_view tag) const;

  // Indices of posts carrying `tag`, ascending. Empty when unknown.
  const std::vector<size_t> &PostsWithTag(std::string_view tag) const;

 private:
  std::vector<Post> posts_;
  std::unordered_map<std::string, std::vector<size_t>> by_tag_;
};

struct ContextQuery {
  std::string id;  // excluded from results; may be empty
  std::set<std::string> tags;
  Date taken_date;
};

struct RetrievalOptions {
  int window_days = 7;
  // Tags with corpus document frequency above this are ignored.
  int tag_freq_cap = 200;
};

// Posts sharing a surviving query tag and taken within +-window_days of the
// query date, deduplicated, sorted by id.
std::vector<Post> RetrieveContext(const ContextQuery &query,
                                  const PostIndex &index,
                                  const RetrievalOptions &options = {});

struct CandidateEntity {
  std::string name;  // display form, most frequent surface variant
  std::string key;   // NormalizeName(name); identity for statistics
  SlotType slot_type;
  int freq = 1;

  bool operator==(const CandidateEntity &) const = default;
};

struct CandidatePool {
  // Per slot type, sorted by (freq desc, key asc), at most top_k long.
  std::map<SlotType, std::vector<CandidateEntity>> per_type;

  // Empty list for unknown types.
  const std::vector<CandidateEntity> &For(const SlotType &type) const;
};

// Groups the context mentions by normalized name and ranks them per slot
// type by the number of context posts mentioning them.
CandidatePool ExtractCandidates(const std::vector<Post> &context,
                                const TypeSystem &ts, int top_k = 5);

// Offline mention finder over the entity names of a TypeSystem.
class Gazetteer {
 public:
  explicit Gazetteer(const TypeSystem &ts);

  // Longest-match, left-to-right, non-overlapping, case-insensitive scan on
  // token boundaries. The coarse type is the parent of the entry's first
  // fine type.
  std::vector<PostMention> Match(std::string_view text) const;

 private:
  std::unordered_map<std::string, CoarseType> entries_;
  size_t max_tokens_ = 0;
};

std::vector<PostMention> GazetteerMatch(std::string_view text,
                                        const TypeSystem &ts);

// Post-level counts keyed by normalized entity name.
class CooccurrenceStats {
 public:
  // Counts one post: each distinct name once, each unordered pair of
  // distinct names once.
  void AddPost(const std::vector<std::string> &names);

  // Direct setters for deserialized statistics. SetPair throws DomainError
  // for a self pair.
  void SetUnary(const std::string &name, long count);
  void SetPair(const std::string &a, const std::string &b, long count);

  // 0 when absent; also 0 for a == b.
  long Unary(const std::string &name) const;
  long Pair(const std::string &a, const std::string &b) const;
  bool HasUnary(const std::string &name) const;

  // Throws DomainError unless every pair count is within [0, min(unary)].
  void Validate() const;

  const std::map<std::string, long> &unary() const { return unary_; }
  const std::map<std::pair<std::string, std::string>, long> &pairs() const {
    return pairs_;
  }

 private:
  std::map<std::string, long> unary_;
  std::map<std::pair<std::string, std::string>, long> pairs_;  // first < second
};

CooccurrenceStats Cooccurrence(const std::vector<Post> &context);

}  // namespace entcap

#endif  // ENTCAP_CANDIDATES_H_
