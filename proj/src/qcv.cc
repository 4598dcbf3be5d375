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

#include "entcap/qcv.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <string>

#include "entcap/error.h"

namespace entcap {

double EdgeWeight(long f_ht, long f_h, long f_t) {
  if (f_h < 1 || f_t < 1 || f_ht < 0 || f_ht > std::min(f_h, f_t)) {
    throw DomainError("invalid co-occurrence counts (f_ht=" +
                      std::to_string(f_ht) + ", f_h=" + std::to_string(f_h) +
                      ", f_t=" + std::to_string(f_t) + ")");
  }
  return static_cast<double>(f_ht) / static_cast<double>(std::max(f_h, f_t));
}

CombinationGraph ScoreGraph(const std::map<int, CandidateEntity> &assignment,
                            const CooccurrenceStats &stats) {
  for (const auto &[pos, c] : assignment) {
    if (!stats.HasUnary(c.key)) {
      throw DomainError("candidate '" + c.key + "' has no unary count");
    }
  }
  CombinationGraph graph;
  graph.assignment = assignment;
  for (auto a = assignment.begin(); a != assignment.end(); ++a) {
    for (auto b = std::next(a); b != assignment.end(); ++b) {
      const std::string &ka = a->second.key;
      const std::string &kb = b->second.key;
      double w = EdgeWeight(stats.Pair(ka, kb), stats.Unary(ka), stats.Unary(kb));
      graph.edges.push_back({a->first, b->first, w});
      graph.total += w;
    }
  }
  return graph;
}

namespace {

// Slots with non-empty candidate lists plus the pairwise edge weights
// between every candidate of every slot pair.
class Problem {
 public:
  Problem(const std::vector<SlotRef> &slots, const CandidatePool &pool,
          const CooccurrenceStats &stats) {
    std::set<int> positions;
    for (const SlotRef &s : slots) {
      if (!positions.insert(s.position).second) {
        throw ContractError("slot position " + std::to_string(s.position) +
                            " listed twice");
      }
      const std::vector<CandidateEntity> &list = pool.For(s.slot_type);
      if (list.empty()) {
        unfillable_.push_back(s.position);
        continue;
      }
      for (const CandidateEntity &c : list) {
        if (!stats.HasUnary(c.key)) {
          throw DomainError("candidate '" + c.key + "' has no unary count");
        }
      }
      slots_.push_back(s);
      lists_.push_back(&list);
    }
    std::sort(unfillable_.begin(), unfillable_.end());

    const size_t k = slots_.size();
    weights_.assign(k, std::vector<std::vector<double>>(k));
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = i + 1; j < k; ++j) {
        std::vector<double> &w = weights_[i][j];
        w.resize(lists_[i]->size() * lists_[j]->size());
        for (size_t a = 0; a < lists_[i]->size(); ++a) {
          for (size_t b = 0; b < lists_[j]->size(); ++b) {
            const std::string &ka = (*lists_[i])[a].key;
            const std::string &kb = (*lists_[j])[b].key;
            w[a * lists_[j]->size() + b] =
                EdgeWeight(stats.Pair(ka, kb), stats.Unary(ka), stats.Unary(kb));
          }
        }
      }
    }

    // Slot indices in ascending position order, for the name tie-break.
    by_position_.resize(k);
    for (size_t i = 0; i < k; ++i) by_position_[i] = i;
    std::sort(by_position_.begin(), by_position_.end(), [&](size_t a, size_t b) {
      return slots_[a].position < slots_[b].position;
    });
  }

  size_t size() const { return slots_.size(); }
  size_t Options(size_t slot) const { return lists_[slot]->size(); }
  const CandidateEntity &Candidate(size_t slot, int c) const {
    return (*lists_[slot])[c];
  }

  // Weight of the edge between slot i (candidate a) and slot j (candidate b).
  double Weight(size_t i, int a, size_t j, int b) const {
    if (i > j) {
      std::swap(i, j);
      std::swap(a, b);
    }
    return weights_[i][j][a * lists_[j]->size() + b];
  }

  // Score gained by adding candidate c at slot `depth` given earlier choices.
  double Gain(const std::vector<int> &choice, size_t depth, int c) const {
    double gain = 0.0;
    for (size_t j = 0; j < depth; ++j) gain += Weight(j, choice[j], depth, c);
    return gain;
  }

  bool Reuses(const std::vector<int> &choice, size_t depth, int c) const {
    const std::string &key = Candidate(depth, c).key;
    for (size_t j = 0; j < depth; ++j) {
      if (Candidate(j, choice[j]).key == key) return true;
    }
    return false;
  }

  long FreqSum(const std::vector<int> &choice) const {
    long sum = 0;
    for (size_t i = 0; i < choice.size(); ++i) sum += Candidate(i, choice[i]).freq;
    return sum;
  }

  // True if complete combination `a` beats co-optimal `b` on the tie-break.
  bool Prefer(const std::vector<int> &a, const std::vector<int> &b) const {
    long fa = FreqSum(a), fb = FreqSum(b);
    if (fa != fb) return fa > fb;
    for (size_t i : by_position_) {
      const std::string &na = Candidate(i, a[i]).name;
      const std::string &nb = Candidate(i, b[i]).name;
      if (na != nb) return na < nb;
    }
    return false;
  }

  Assignment Build(const std::vector<int> *best, double score, long ties) const {
    Assignment out;
    out.unfillable = unfillable_;
    if (best == nullptr) {
      // No admissible combination.
      for (const SlotRef &s : slots_) out.unfillable.push_back(s.position);
      std::sort(out.unfillable.begin(), out.unfillable.end());
      return out;
    }
    for (size_t i = 0; i < slots_.size(); ++i) {
      out.chosen.emplace(slots_[i].position, Candidate(i, (*best)[i]));
    }
    out.score = score;
    out.ties = ties;
    return out;
  }

 private:
  std::vector<SlotRef> slots_;
  std::vector<const std::vector<CandidateEntity> *> lists_;
  std::vector<int> unfillable_;
  std::vector<std::vector<std::vector<double>>> weights_;
  std::vector<size_t> by_position_;
};

// Depth-first walk over every admissible combination.
void Enumerate(const Problem &problem, bool allow_duplicates,
               const std::function<void(const std::vector<int> &, double)> &visit) {
  std::vector<int> choice(problem.size(), 0);
  std::function<void(size_t, double)> walk = [&](size_t depth, double score) {
    if (depth == problem.size()) {
      visit(choice, score);
      return;
    }
    for (size_t c = 0; c < problem.Options(depth); ++c) {
      int ci = static_cast<int>(c);
      if (!allow_duplicates && problem.Reuses(choice, depth, ci)) continue;
      choice[depth] = ci;
      walk(depth + 1, score + problem.Gain(choice, depth, ci));
    }
  };
  walk(0, 0.0);
}

// Picks the winner among complete combinations by score, then tie-break.
class Selector {
 public:
  explicit Selector(const Problem &problem) : problem_(problem) {}

  void SetBest(double best) { best_ = best; }

  void Offer(const std::vector<int> &choice, double score) {
    if (score < best_ - kScoreTolerance) return;
    ++ties_;
    if (!have_ || problem_.Prefer(choice, winner_)) {
      winner_ = choice;
      winner_score_ = score;
      have_ = true;
    }
  }

  Assignment Result() const {
    return problem_.Build(have_ ? &winner_ : nullptr, winner_score_, ties_);
  }

 private:
  const Problem &problem_;
  double best_ = 0.0;
  std::vector<int> winner_;
  double winner_score_ = 0.0;
  long ties_ = 0;
  bool have_ = false;
};

}  // namespace

Assignment Solve(const std::vector<SlotRef> &slots, const CandidatePool &pool,
                 const CooccurrenceStats &stats, const SolveOptions &options) {
  if (options.beam_width) {
    return SolveBeam(slots, pool, stats, *options.beam_width,
                     options.allow_duplicates);
  }
  Problem problem(slots, pool, stats);
  if (problem.size() > static_cast<size_t>(options.max_exhaustive_slots)) {
    throw CapacityError(
        std::to_string(problem.size()) + " fillable slots exceed the exhaustive "
        "limit of " + std::to_string(options.max_exhaustive_slots) +
        "; set beam_width to use beam search");
  }

  double best = -std::numeric_limits<double>::infinity();
  Enumerate(problem, options.allow_duplicates,
            [&](const std::vector<int> &, double score) {
              best = std::max(best, score);
            });
  Selector selector(problem);
  selector.SetBest(best);
  Enumerate(problem, options.allow_duplicates,
            [&](const std::vector<int> &choice, double score) {
              selector.Offer(choice, score);
            });
  return selector.Result();
}

Assignment SolveBeam(const std::vector<SlotRef> &slots,
                     const CandidatePool &pool, const CooccurrenceStats &stats,
                     int beam_width, bool allow_duplicates) {
  if (beam_width < 1) throw ContractError("beam_width must be at least 1");
  Problem problem(slots, pool, stats);

  struct Partial {
    std::vector<int> choice;
    double score = 0.0;
    long freq = 0;
  };
  auto rank = [&](const Partial &a, const Partial &b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.freq != b.freq) return a.freq > b.freq;
    for (size_t i = 0; i < a.choice.size(); ++i) {
      const std::string &na = problem.Candidate(i, a.choice[i]).name;
      const std::string &nb = problem.Candidate(i, b.choice[i]).name;
      if (na != nb) return na < nb;
    }
    return false;
  };

  // One plain beam pass. Sets *truncated when any level dropped partials.
  auto run = [&](size_t width, bool *truncated) {
    std::vector<Partial> beam(1);
    for (size_t depth = 0; depth < problem.size(); ++depth) {
      std::vector<Partial> next;
      for (const Partial &p : beam) {
        for (size_t c = 0; c < problem.Options(depth); ++c) {
          int ci = static_cast<int>(c);
          if (!allow_duplicates && problem.Reuses(p.choice, depth, ci)) continue;
          Partial q = p;
          q.choice.push_back(ci);
          q.score += problem.Gain(q.choice, depth, ci);
          q.freq += problem.Candidate(depth, ci).freq;
          next.push_back(std::move(q));
        }
      }
      // Completed combinations are all scored; only partials are pruned.
      if (depth + 1 < problem.size() && next.size() > width) {
        *truncated = true;
        std::partial_sort(next.begin(), next.begin() + width, next.end(), rank);
        next.resize(width);
      }
      beam = std::move(next);
      if (beam.empty()) break;
    }
    return beam;
  };

  // A single pass is not monotone in the width, so every width up to
  // beam_width contributes its survivors. The first width that never
  // truncates has seen the whole product and ends the sweep.
  std::map<std::vector<int>, double> found;
  for (size_t width = 1; width <= static_cast<size_t>(beam_width); ++width) {
    bool truncated = false;
    for (Partial &p : run(width, &truncated)) {
      found.emplace(std::move(p.choice), p.score);
    }
    if (!truncated) break;
  }

  Selector selector(problem);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto &[choice, score] : found) best = std::max(best, score);
  selector.SetBest(best);
  for (const auto &[choice, score] : found) selector.Offer(choice, score);
  return selector.Result();
}

}  // namespace entcap
