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

#ifndef ENTCAP_QCV_H_
#define ENTCAP_QCV_H_

#include <map>
#include <optional>
#include <vector>

#include "entcap/candidates.h"
#include "entcap/typesys.h"

namespace entcap {

// Scores within this distance of the best are co-optimal.
inline constexpr double kScoreTolerance = 1e-9;

// A slot of a template, addressed by its item position.
struct SlotRef {
  int position = 0;
  SlotType slot_type;
};

struct GraphEdge {
  int a = 0;  // slot positions, a < b
  int b = 0;
  double weight = 0.0;
};

// Complete graph over the assigned slots.
struct CombinationGraph {
  std::map<int, CandidateEntity> assignment;
  std::vector<GraphEdge> edges;
  double total = 0.0;
};

struct Assignment {
  std::map<int, CandidateEntity> chosen;  // slot position -> candidate
  std::vector<int> unfillable;            // slot positions, ascending
  double score = 0.0;
  // Number of combinations scoring within kScoreTolerance of `score`.
  long ties = 0;
};

// Co-occurrence edge weight f_ht / max(f_h, f_t). Throws DomainError unless
// f_h >= 1, f_t >= 1 and 0 <= f_ht <= min(f_h, f_t).
double EdgeWeight(long f_ht, long f_h, long f_t);

// Throws DomainError if an assigned candidate has no unary count. A pair
// absent from the statistics weighs zero.
CombinationGraph ScoreGraph(const std::map<int, CandidateEntity> &assignment,
                            const CooccurrenceStats &stats);

struct SolveOptions {
  bool allow_duplicates = true;
  // Exhaustive search refuses more fillable slots than this.
  int max_exhaustive_slots = 8;
  // When set, Solve delegates to SolveBeam.
  std::optional<int> beam_width;
};

// Exhaustive argmax of the summed edge weight over every combination of
// per-slot candidates. Slots whose type has no candidates are unfillable.
// Among co-optimal combinations the highest sum of candidate frequencies
// wins, then the lexicographically smallest candidate names read in slot
// position order. With allow_duplicates off, combinations that reuse a
// candidate are skipped; if none remain, every fillable slot is reported
// unfillable. Throws CapacityError above max_exhaustive_slots without a
// beam, ContractError for repeated slot positions.
Assignment Solve(const std::vector<SlotRef> &slots, const CandidatePool &pool,
                 const CooccurrenceStats &stats,
                 const SolveOptions &options = {});

// Reference implementation for testing Solve: plain enumeration with its
// own scoring arithmetic.
Assignment SolveBruteforce(const std::vector<SlotRef> &slots,
                           const CandidatePool &pool,
                           const CooccurrenceStats &stats,
                           bool allow_duplicates = true);

// Left-to-right beam search over slots in input order, keeping the best
// partial combinations by partial score; the last slot extends every
// survivor and all completions compete. Every width from 1 to beam_width
// is run and the best completed combination over all of them is returned,
// so the score never drops as beam_width grows. Equals Solve when the beam
// holds the full product. Throws ContractError if beam_width < 1.
Assignment SolveBeam(const std::vector<SlotRef> &slots,
                     const CandidatePool &pool, const CooccurrenceStats &stats,
                     int beam_width, bool allow_duplicates = true);

}  // namespace entcap

#endif  // ENTCAP_QCV_H_
