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

#include "entcap/jsonio.h"

#include <algorithm>

#include "entcap/error.h"
#include "entcap/text.h"

namespace entcap {

namespace {

const Json &Field(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string StringField(const Json &j, const char *key) {
  const Json &v = Field(j, key);
  if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

long IntField(const Json &j, const char *key) {
  const Json &v = Field(j, key);
  if (!v.is_number_integer()) {
    throw SchemaError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<long>();
}

CoarseType CoarseField(const Json &j, const char *key) {
  std::string name = StringField(j, key);
  auto coarse = ParseCoarseType(name);
  if (!coarse) throw SchemaError("unknown coarse type '" + name + "'");
  return *coarse;
}

}  // namespace

void ReadJsonl(std::istream &in, const std::string &source,
               const std::function<void(const Json &, int)> &fn) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (CollapseWhitespace(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno, source);
    }
    try {
      fn(j, lineno);
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), lineno, source);
    } catch (const Json::exception &e) {
      throw ParseError(e.what(), lineno, source);
    }
  }
}

std::string DumpLine(const Json &j) { return j.dump(); }

Json TemplateToJson(const Template &t) {
  Json items = Json::array();
  for (const TemplateItem &item : t.items) {
    if (const auto *w = std::get_if<WordItem>(&item)) {
      items.push_back({{"w", w->form}});
    } else {
      items.push_back({{"slot", std::get<SlotItem>(item).slot_type.name}});
    }
  }
  return {{"doc_id", t.doc_id}, {"items", items}};
}

Template TemplateFromJson(const Json &j) {
  Template t;
  t.doc_id = StringField(j, "doc_id");
  const Json &items = Field(j, "items");
  if (!items.is_array() || items.empty()) {
    throw SchemaError("template items must be a non-empty array");
  }
  for (const Json &item : items) {
    if (item.contains("w")) {
      t.items.push_back(WordItem{StringField(item, "w")});
    } else if (item.contains("slot")) {
      t.items.push_back(SlotItem{SlotType(StringField(item, "slot"))});
    } else {
      throw SchemaError("template item needs 'w' or 'slot'");
    }
  }
  return t;
}

MentionRecord MentionFromJson(const Json &j) {
  MentionRecord r;
  r.doc_id = StringField(j, "doc_id");
  r.mention.start = static_cast<int>(IntField(j, "start"));
  r.mention.end = static_cast<int>(IntField(j, "end"));
  r.mention.surface = StringField(j, "surface");
  r.mention.coarse = CoarseField(j, "coarse");
  return r;
}

PostRecord PostFromJson(const Json &j) {
  PostRecord r;
  r.post.id = StringField(j, "id");
  const Json &tags = Field(j, "tags");
  if (!tags.is_array()) throw SchemaError("'tags' must be an array");
  for (const Json &t : tags) {
    if (!t.is_string()) throw SchemaError("tags must be strings");
    std::string tag = NormalizeTag(t.get<std::string>());
    if (!tag.empty()) r.post.tags.insert(tag);
  }
  std::string date = StringField(j, "taken_date");
  auto parsed = ParseDate(date);
  if (!parsed) throw SchemaError("bad taken_date '" + date + "'");
  r.post.taken_date = *parsed;
  r.post.text = j.contains("text") ? StringField(j, "text") : "";
  if (j.contains("mentions")) {
    r.has_mentions = true;
    for (const Json &m : j.at("mentions")) {
      r.post.mentions.push_back({StringField(m, "surface"), CoarseField(m, "coarse")});
    }
  }
  return r;
}

Json PostToJson(const Post &p) {
  Json mentions = Json::array();
  for (const PostMention &m : p.mentions) {
    mentions.push_back({{"surface", m.surface},
                        {"coarse", std::string(CoarseTypeName(m.coarse))}});
  }
  return {{"id", p.id},
          {"tags", p.tags},
          {"taken_date", FormatIsoDate(p.taken_date)},
          {"text", p.text},
          {"mentions", mentions}};
}

Json PoolToJson(const CandidatePool &pool) {
  Json out = Json::object();
  for (const auto &[type, list] : pool.per_type) {
    Json arr = Json::array();
    for (const CandidateEntity &c : list) {
      arr.push_back({{"name", c.name}, {"key", c.key}, {"freq", c.freq}});
    }
    out[type.name] = arr;
  }
  return out;
}

CandidatePool PoolFromJson(const Json &j) {
  if (!j.is_object()) throw SchemaError("pool must be an object");
  CandidatePool pool;
  for (const auto &[type, arr] : j.items()) {
    if (!arr.is_array()) throw SchemaError("pool entry must be an array");
    std::vector<CandidateEntity> &list = pool.per_type[SlotType(type)];
    for (const Json &c : arr) {
      CandidateEntity e;
      e.name = StringField(c, "name");
      e.key = c.contains("key") ? StringField(c, "key") : NormalizeName(e.name);
      e.slot_type = SlotType(type);
      e.freq = static_cast<int>(IntField(c, "freq"));
      if (e.freq < 1) throw SchemaError("candidate freq must be >= 1");
      list.push_back(std::move(e));
    }
    if (list.empty()) pool.per_type.erase(SlotType(type));
  }
  return pool;
}

Json StatsToJson(const CooccurrenceStats &stats) {
  Json unary = Json::object();
  for (const auto &[name, n] : stats.unary()) unary[name] = n;
  Json pairs = Json::array();
  for (const auto &[names, n] : stats.pairs()) {
    pairs.push_back({names.first, names.second, n});
  }
  return {{"unary", unary}, {"pairs", pairs}};
}

CooccurrenceStats StatsFromJson(const Json &j) {
  CooccurrenceStats stats;
  const Json &unary = Field(j, "unary");
  if (!unary.is_object()) throw SchemaError("'unary' must be an object");
  for (const auto &[name, n] : unary.items()) {
    if (!n.is_number_integer()) throw SchemaError("unary counts must be integers");
    stats.SetUnary(NormalizeName(name), n.get<long>());
  }
  if (j.contains("pairs")) {
    for (const Json &p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 3 || !p[0].is_string() ||
          !p[1].is_string() || !p[2].is_number_integer()) {
        throw SchemaError("pairs entries must be [name, name, count]");
      }
      stats.SetPair(NormalizeName(p[0].get<std::string>()),
                    NormalizeName(p[1].get<std::string>()), p[2].get<long>());
    }
  }
  stats.Validate();
  return stats;
}

Json AssignmentToJson(const Assignment &a) {
  Json chosen = Json::array();
  for (const auto &[pos, c] : a.chosen) {
    chosen.push_back({{"position", pos}, {"name", c.name}, {"slot", c.slot_type.name}});
  }
  return {{"chosen", chosen},
          {"unfillable", a.unfillable},
          {"omega", a.score},
          {"ties", a.ties}};
}

QcvInstance InstanceFromJson(const Json &j) {
  QcvInstance inst;
  const Json &slots = Field(j, "slots");
  if (!slots.is_array()) throw SchemaError("'slots' must be an array");
  for (const Json &s : slots) {
    inst.slots.push_back({static_cast<int>(IntField(s, "position")),
                          SlotType(StringField(s, "slot"))});
  }
  inst.pool = PoolFromJson(Field(j, "pool"));
  inst.stats = StatsFromJson(Field(j, "stats"));
  if (j.contains("allow_duplicates")) {
    inst.allow_duplicates = j.at("allow_duplicates").get<bool>();
  }
  return inst;
}

Json InstanceToJson(const QcvInstance &instance) {
  Json slots = Json::array();
  for (const SlotRef &s : instance.slots) {
    slots.push_back({{"position", s.position}, {"slot", s.slot_type.name}});
  }
  return {{"slots", slots},
          {"pool", PoolToJson(instance.pool)},
          {"stats", StatsToJson(instance.stats)},
          {"allow_duplicates", instance.allow_duplicates}};
}

QcvInstance RandomInstance(std::mt19937_64 &rng, const InstanceShape &shape) {
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  QcvInstance inst;
  int num_slots = uniform(shape.min_slots, shape.max_slots);
  for (int i = 0; i < num_slots; ++i) {
    // Positions leave room for words between slots.
    inst.slots.push_back({2 * i + 1,
                          SlotType("T" + std::to_string(uniform(0, shape.num_types - 1)))});
  }

  std::vector<std::string> names;
  for (int t = 0; t < shape.num_types; ++t) {
    SlotType type("T" + std::to_string(t));
    int count = uniform(shape.min_candidates, shape.max_candidates);
    std::vector<CandidateEntity> &list = inst.pool.per_type[type];
    for (int c = 0; c < count; ++c) {
      CandidateEntity e;
      e.name = "t" + std::to_string(t) + "c" + std::to_string(c);
      e.key = e.name;
      e.slot_type = type;
      e.freq = uniform(1, shape.max_unary);
      inst.stats.SetUnary(e.key, e.freq);
      names.push_back(e.key);
      list.push_back(std::move(e));
    }
    std::sort(list.begin(), list.end(),
              [](const CandidateEntity &a, const CandidateEntity &b) {
                if (a.freq != b.freq) return a.freq > b.freq;
                return a.key < b.key;
              });
  }
  std::bernoulli_distribution present(0.7);
  for (size_t a = 0; a < names.size(); ++a) {
    for (size_t b = a + 1; b < names.size(); ++b) {
      if (!present(rng)) continue;
      long bound = std::min(inst.stats.Unary(names[a]), inst.stats.Unary(names[b]));
      inst.stats.SetPair(names[a], names[b], uniform(0, static_cast<int>(bound)));
    }
  }
  inst.allow_duplicates = std::bernoulli_distribution(0.5)(rng);
  return inst;
}

Json ReportToJson(const EvalReport &report, const ReportOptions &options) {
  Json bleu = Json::array();
  for (double b : report.bleu) bleu.push_back(b);
  return {
      {"n", report.n},
      {"bleu", bleu},
      {"rouge_l", report.rouge_l},
      {"cider", report.cider_available ? Json(report.cider) : Json(nullptr)},
      {"meteor", nullptr},
      {"entity",
       {{"precision", report.entity.precision},
        {"recall", report.entity.recall},
        {"f1", report.entity.f1},
        {"matched", report.entity.matched},
        {"predicted", report.entity.predicted},
        {"reference", report.entity.reference}}},
      {"metadata",
       {{"bleu", "corpus-level, orders 1-4, clipped counts, closest-reference "
                 "brevity penalty"},
        {"rouge", "ROUGE-L"},
        {"rouge_beta", kRougeBeta},
        {"cider", "tf-idf cosine with gaussian length penalty"},
        {"cider_sigma", kCiderSigma},
        {"cider_scale", kCiderScale},
        {"cider_max_n", 4},
        {"meteor", "not computed"},
        {"entity_match", "normalized containment or token Jaccard"},
        {"fuzzy_threshold", options.fuzzy_threshold}}}};
}

}  // namespace entcap
