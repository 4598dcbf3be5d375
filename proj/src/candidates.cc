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

#include "entcap/candidates.h"

#include <algorithm>

#include "entcap/error.h"
#include "entcap/text.h"

namespace entcap {

std::string NormalizeTag(std::string_view tag) {
  std::string t = CollapseWhitespace(tag);
  size_t i = 0;
  while (i < t.size() && t[i] == '#') ++i;
  return ToLower(t.substr(i));
}

PostIndex::PostIndex(std::vector<Post> posts) : posts_(std::move(posts)) {
  std::set<std::string> ids;
  for (size_t i = 0; i < posts_.size(); ++i) {
    if (!ids.insert(posts_[i].id).second) {
      throw SchemaError("duplicate post id '" + posts_[i].id + "'");
    }
    for (const std::string &tag : posts_[i].tags) {
      by_tag_[NormalizeTag(tag)].push_back(i);
    }
  }
}

size_t PostIndex::TagFrequency(std::string_view tag) const {
  return PostsWithTag(tag).size();
}

const std::vector<size_t> &PostIndex::PostsWithTag(std::string_view tag) const {
  static const std::vector<size_t> kEmpty;
  auto it = by_tag_.find(NormalizeTag(tag));
  return it == by_tag_.end() ? kEmpty : it->second;
}

std::vector<Post> RetrieveContext(const ContextQuery &query,
                                  const PostIndex &index,
                                  const RetrievalOptions &options) {
  std::set<size_t> hits;
  for (const std::string &tag : query.tags) {
    const std::vector<size_t> &posts = index.PostsWithTag(tag);
    if (posts.size() > static_cast<size_t>(options.tag_freq_cap)) continue;
    for (size_t i : posts) {
      const Post &p = index.posts()[i];
      if (!query.id.empty() && p.id == query.id) continue;
      if (DaysBetween(p.taken_date, query.taken_date) > options.window_days) {
        continue;
      }
      hits.insert(i);
    }
  }
  std::vector<Post> out;
  out.reserve(hits.size());
  for (size_t i : hits) out.push_back(index.posts()[i]);
  std::sort(out.begin(), out.end(),
            [](const Post &a, const Post &b) { return a.id < b.id; });
  return out;
}

const std::vector<CandidateEntity> &CandidatePool::For(
    const SlotType &type) const {
  static const std::vector<CandidateEntity> kEmpty;
  auto it = per_type.find(type);
  return it == per_type.end() ? kEmpty : it->second;
}

namespace {

struct NameGroup {
  int posts = 0;
  std::map<std::string, int> surfaces;
  std::map<CoarseType, int> coarse;
};

template <typename K>
K MostFrequent(const std::map<K, int> &counts) {
  // std::map iteration is ascending, so the first maximum is the smallest key.
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

}  // namespace

CandidatePool ExtractCandidates(const std::vector<Post> &context,
                                const TypeSystem &ts, int top_k) {
  std::map<std::string, NameGroup> groups;
  for (const Post &post : context) {
    std::set<std::string> seen;
    for (const PostMention &m : post.mentions) {
      std::string key = NormalizeName(m.surface);
      if (key.empty()) continue;
      NameGroup &g = groups[key];
      g.surfaces[CollapseWhitespace(m.surface)]++;
      g.coarse[m.coarse]++;
      if (seen.insert(key).second) g.posts++;
    }
  }

  CandidatePool pool;
  for (const auto &[key, group] : groups) {
    CandidateEntity c;
    c.name = MostFrequent(group.surfaces);
    c.key = key;
    c.slot_type = ResolveSlotType(c.name, MostFrequent(group.coarse), ts);
    c.freq = group.posts;
    pool.per_type[c.slot_type].push_back(std::move(c));
  }
  for (auto &[type, list] : pool.per_type) {
    std::sort(list.begin(), list.end(),
              [](const CandidateEntity &a, const CandidateEntity &b) {
                if (a.freq != b.freq) return a.freq > b.freq;
                return a.key < b.key;
              });
    if (list.size() > static_cast<size_t>(top_k)) list.resize(top_k);
  }
  return pool;
}

Gazetteer::Gazetteer(const TypeSystem &ts) {
  for (const auto &[name, rows] : ts.entity_index()) {
    std::vector<std::string> tokens = WordTokenize(name);
    if (tokens.empty() || rows.empty()) continue;
    entries_.emplace(Join(tokens, " "), ts.fine_types()[rows.front()].parent);
    max_tokens_ = std::max(max_tokens_, tokens.size());
  }
}

std::vector<PostMention> Gazetteer::Match(std::string_view text) const {
  std::vector<PostMention> out;
  std::vector<TextSpan> spans = WordSpans(text);
  std::vector<std::string> lowered;
  lowered.reserve(spans.size());
  for (const TextSpan &s : spans) {
    lowered.push_back(ToLower(text.substr(s.begin, s.end - s.begin)));
  }
  size_t i = 0;
  while (i < spans.size()) {
    size_t longest = 0;
    CoarseType coarse = CoarseType::kMiscellaneous;
    std::string key;
    for (size_t len = 1; len <= max_tokens_ && i + len <= spans.size(); ++len) {
      if (len > 1) key += ' ';
      key += lowered[i + len - 1];
      auto it = entries_.find(key);
      if (it != entries_.end()) {
        longest = len;
        coarse = it->second;
      }
    }
    if (longest == 0) {
      ++i;
      continue;
    }
    size_t begin = spans[i].begin;
    size_t end = spans[i + longest - 1].end;
    out.push_back({CollapseWhitespace(text.substr(begin, end - begin)), coarse});
    i += longest;
  }
  return out;
}

std::vector<PostMention> GazetteerMatch(std::string_view text,
                                        const TypeSystem &ts) {
  return Gazetteer(ts).Match(text);
}

void CooccurrenceStats::AddPost(const std::vector<std::string> &names) {
  std::set<std::string> distinct(names.begin(), names.end());
  for (const std::string &n : distinct) unary_[n]++;
  for (auto a = distinct.begin(); a != distinct.end(); ++a) {
    for (auto b = std::next(a); b != distinct.end(); ++b) {
      pairs_[{*a, *b}]++;
    }
  }
}

void CooccurrenceStats::SetUnary(const std::string &name, long count) {
  unary_[name] = count;
}

void CooccurrenceStats::SetPair(const std::string &a, const std::string &b,
                                long count) {
  if (a == b) throw DomainError("self co-occurrence pair for '" + a + "'");
  pairs_[a < b ? std::make_pair(a, b) : std::make_pair(b, a)] = count;
}

long CooccurrenceStats::Unary(const std::string &name) const {
  auto it = unary_.find(name);
  return it == unary_.end() ? 0 : it->second;
}

bool CooccurrenceStats::HasUnary(const std::string &name) const {
  return unary_.count(name) > 0;
}

long CooccurrenceStats::Pair(const std::string &a, const std::string &b) const {
  if (a == b) return 0;
  auto it = pairs_.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  return it == pairs_.end() ? 0 : it->second;
}

void CooccurrenceStats::Validate() const {
  for (const auto &[name, count] : unary_) {
    if (count < 0) throw DomainError("negative count for '" + name + "'");
  }
  for (const auto &[names, count] : pairs_) {
    long bound = std::min(Unary(names.first), Unary(names.second));
    if (count < 0 || count > bound) {
      throw DomainError("pair count " + std::to_string(count) + " for ('" +
                        names.first + "', '" + names.second +
                        "') exceeds min unary count " + std::to_string(bound));
    }
  }
}

CooccurrenceStats Cooccurrence(const std::vector<Post> &context) {
  CooccurrenceStats stats;
  for (const Post &post : context) {
    std::vector<std::string> names;
    for (const PostMention &m : post.mentions) {
      std::string key = NormalizeName(m.surface);
      if (!key.empty()) names.push_back(std::move(key));
    }
    stats.AddPost(names);
  }
  return stats;
}

}  // namespace entcap
