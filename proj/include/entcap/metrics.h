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

#ifndef ENTCAP_METRICS_H_
#define ENTCAP_METRICS_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace entcap {

// One system caption with its ground truth. Scoring case-folds tokens.
struct EvalPair {
  std::string doc_id;
  std::vector<std::string> candidate;
  std::vector<std::vector<std::string>> references;  // non-empty
  std::vector<std::string> cand_entities;
  std::vector<std::string> ref_entities;
};

// Tokenizes caption strings with WordTokenize and lowercases them.
EvalPair MakeEvalPair(std::string doc_id, std::string_view candidate,
                      const std::vector<std::string> &references,
                      std::vector<std::string> cand_entities = {},
                      std::vector<std::string> ref_entities = {});

struct EntityScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long matched = 0;
  long predicted = 0;
  long reference = 0;
};

struct EvalReport {
  std::array<double, 4> bleu{};
  double rouge_l = 0.0;
  double cider = 0.0;
  bool cider_available = false;  // needs at least two pairs
  EntityScore entity;
  long n = 0;
};

// Corpus-level BLEU-1..max_n: clipped n-gram precision summed over the
// corpus, geometric mean over orders, brevity penalty against the closest
// reference length. Throws DomainError on an empty corpus or a pair without
// references.
std::vector<double> Bleu(const std::vector<EvalPair> &pairs, int max_n = 4);

inline constexpr double kRougeBeta = 1.2;

size_t LongestCommonSubsequence(const std::vector<std::string> &a,
                                const std::vector<std::string> &b);

// Mean over pairs of the best per-reference LCS F-measure.
double RougeL(const std::vector<EvalPair> &pairs, double beta = kRougeBeta);

inline constexpr double kCiderSigma = 6.0;
inline constexpr double kCiderScale = 10.0;

// Consensus tf-idf cosine per n-gram order with a Gaussian penalty on the
// length difference, averaged over references and orders, times 10. The idf
// is computed over the reference sets of the whole corpus. Throws
// DomainError for fewer than two pairs.
double Cider(const std::vector<EvalPair> &pairs, int max_n = 4,
             double sigma = kCiderSigma);

// Same, without the x10 scaling, split by order: result[n-1] is the corpus
// mean of the order-n similarity.
std::vector<double> CiderPerOrder(const std::vector<EvalPair> &pairs,
                                  int max_n = 4, double sigma = kCiderSigma);

struct FuzzyMatchConfig {
  double jaccard_threshold = 0.5;
};

// Case-folds, turns ASCII punctuation into spaces, collapses whitespace.
std::string NormalizeEntity(std::string_view s);

// Token-set Jaccard of two normalized entity strings.
double EntityJaccard(std::string_view a, std::string_view b);

// True when, after normalization, one string contains the other or the
// token-set Jaccard reaches the threshold.
bool EntitiesMatch(std::string_view a, std::string_view b,
                   const FuzzyMatchConfig &config = {});

// Greedy one-to-one matching in descending Jaccard order; micro-averaged
// over the corpus. Zero denominators give zero.
EntityScore EntityF1(const std::vector<EvalPair> &pairs,
                     const FuzzyMatchConfig &config = {});

// All metrics at once. CIDEr is skipped (cider_available = false) for
// single-pair corpora.
EvalReport Evaluate(const std::vector<EvalPair> &pairs,
                    const FuzzyMatchConfig &config = {});

}  // namespace entcap

#endif  // ENTCAP_METRICS_H_
