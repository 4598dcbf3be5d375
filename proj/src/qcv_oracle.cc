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

// Naive reference solver. Shares no scoring code with qcv.cc on purpose:
// every combination is materialized and scored from the raw counts.

#include <algorithm>
#include <set>
#include <string>

#include "entcap/error.h"
#include "entcap/qcv.h"

namespace entcap {

namespace {

struct Scored {
  std::vector<const CandidateEntity *> picks;  // per fillable slot
  double omega = 0.0;
  long freq = 0;
  std::vector<std::string> names_by_position;
};

}  // namespace

Assignment SolveBruteforce(const std::vector<SlotRef> &slots,
                           const CandidatePool &pool,
                           const CooccurrenceStats &stats,
                           bool allow_duplicates) {
  std::set<int> seen;
  for (const SlotRef &s : slots) {
    if (!seen.insert(s.position).second) {
      throw ContractError("slot position " + std::to_string(s.position) +
                          " listed twice");
    }
  }

  std::vector<SlotRef> fill;
  std::vector<int> unfillable;
  for (const SlotRef &s : slots) {
    if (pool.For(s.slot_type).empty()) {
      unfillable.push_back(s.position);
    } else {
      fill.push_back(s);
    }
  }
  for (const SlotRef &s : fill) {
    for (const CandidateEntity &c : pool.For(s.slot_type)) {
      if (stats.Unary(c.key) < 1) {
        throw DomainError("candidate '" + c.key + "' has no unary count");
      }
    }
  }

  // Slot indices sorted by template position.
  std::vector<size_t> order(fill.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return fill[a].position < fill[b].position;
  });

  std::vector<Scored> all;
  std::vector<size_t> odometer(fill.size(), 0);
  for (;;) {
    Scored s;
    for (size_t i = 0; i < fill.size(); ++i) {
      s.picks.push_back(&pool.For(fill[i].slot_type)[odometer[i]]);
    }
    bool ok = true;
    if (!allow_duplicates) {
      std::set<std::string> keys;
      for (const CandidateEntity *c : s.picks) ok = ok && keys.insert(c->key).second;
    }
    if (ok) {
      for (size_t i = 0; i < s.picks.size(); ++i) {
        for (size_t j = i + 1; j < s.picks.size(); ++j) {
          const std::string &h = s.picks[i]->key;
          const std::string &t = s.picks[j]->key;
          long f_ht = h == t ? 0 : stats.Pair(h, t);
          long f_h = stats.Unary(h);
          long f_t = stats.Unary(t);
          if (f_ht < 0 || f_ht > f_h || f_ht > f_t) {
            throw DomainError("pair count exceeds unary count");
          }
          s.omega += double(f_ht) / double(f_h > f_t ? f_h : f_t);
        }
      }
      for (const CandidateEntity *c : s.picks) s.freq += c->freq;
      for (size_t i : order) s.names_by_position.push_back(s.picks[i]->name);
      all.push_back(std::move(s));
    }

    size_t i = 0;
    while (i < fill.size()) {
      if (++odometer[i] < pool.For(fill[i].slot_type).size()) break;
      odometer[i] = 0;
      ++i;
    }
    if (i == fill.size()) break;
  }

  Assignment out;
  std::sort(unfillable.begin(), unfillable.end());
  out.unfillable = unfillable;
  if (all.empty()) {
    for (const SlotRef &s : fill) out.unfillable.push_back(s.position);
    std::sort(out.unfillable.begin(), out.unfillable.end());
    return out;
  }

  double best = all.front().omega;
  for (const Scored &s : all) best = std::max(best, s.omega);
  std::vector<const Scored *> top;
  for (const Scored &s : all) {
    if (s.omega >= best - kScoreTolerance) top.push_back(&s);
  }
  const Scored *winner = top.front();
  for (const Scored *s : top) {
    if (s->freq > winner->freq ||
        (s->freq == winner->freq &&
         s->names_by_position < winner->names_by_position)) {
      winner = s;
    }
  }
  for (size_t i = 0; i < fill.size(); ++i) {
    out.chosen.emplace(fill[i].position, *winner->picks[i]);
  }
  out.score = winner->omega;
  out.ties = static_cast<long>(top.size());
  return out;
}

}  // namespace entcap
