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

#include "entcap/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "entcap/error.h"
#include "entcap/text.h"

namespace entcap {

namespace {

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<Tokens, long>;

NgramCounts CountNgrams(const Tokens &tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[Tokens(tokens.begin() + i, tokens.begin() + i + n)]++;
  }
  return counts;
}

Tokens Lowered(const Tokens &tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const std::string &t : tokens) out.push_back(ToLower(t));
  return out;
}

// Case-folded copy; also enforces the non-empty corpus and references.
std::vector<EvalPair> Normalize(const std::vector<EvalPair> &pairs) {
  if (pairs.empty()) throw DomainError("no pairs");
  std::vector<EvalPair> out = pairs;
  for (EvalPair &p : out) {
    if (p.references.empty()) {
      throw DomainError("pair " + p.doc_id + " has no references");
    }
    p.candidate = Lowered(p.candidate);
    for (Tokens &r : p.references) r = Lowered(r);
  }
  return out;
}

}  // namespace

EvalPair MakeEvalPair(std::string doc_id, std::string_view candidate,
                      const std::vector<std::string> &references,
                      std::vector<std::string> cand_entities,
                      std::vector<std::string> ref_entities) {
  EvalPair p;
  p.doc_id = std::move(doc_id);
  p.candidate = Lowered(WordTokenize(candidate));
  for (const std::string &r : references) {
    p.references.push_back(Lowered(WordTokenize(r)));
  }
  p.cand_entities = std::move(cand_entities);
  p.ref_entities = std::move(ref_entities);
  return p;
}

std::vector<double> Bleu(const std::vector<EvalPair> &input, int max_n) {
  std::vector<EvalPair> pairs = Normalize(input);
  std::vector<long> matches(max_n + 1, 0), totals(max_n + 1, 0);
  long cand_len = 0, ref_len = 0;

  for (const EvalPair &p : pairs) {
    long c = static_cast<long>(p.candidate.size());
    cand_len += c;
    // Closest reference length; the shorter one on a tie.
    long best = -1;
    for (const Tokens &r : p.references) {
      long len = static_cast<long>(r.size());
      if (best < 0 || std::labs(len - c) < std::labs(best - c) ||
          (std::labs(len - c) == std::labs(best - c) && len < best)) {
        best = len;
      }
    }
    ref_len += best;

    for (int n = 1; n <= max_n; ++n) {
      NgramCounts cand = CountNgrams(p.candidate, n);
      NgramCounts max_ref;
      for (const Tokens &r : p.references) {
        for (const auto &[g, cnt] : CountNgrams(r, n)) {
          max_ref[g] = std::max(max_ref[g], cnt);
        }
      }
      for (const auto &[g, cnt] : cand) {
        totals[n] += cnt;
        auto it = max_ref.find(g);
        if (it != max_ref.end()) matches[n] += std::min(cnt, it->second);
      }
    }
  }

  double bp = 0.0;
  if (cand_len > 0) {
    bp = cand_len < ref_len
             ? std::exp(1.0 - static_cast<double>(ref_len) / cand_len)
             : 1.0;
  }
  std::vector<double> scores;
  double log_sum = 0.0;
  bool zero = false;
  for (int n = 1; n <= max_n; ++n) {
    if (matches[n] == 0 || totals[n] == 0) {
      zero = true;
    } else {
      log_sum += std::log(static_cast<double>(matches[n]) / totals[n]);
    }
    scores.push_back(zero || bp == 0.0 ? 0.0 : bp * std::exp(log_sum / n));
  }
  return scores;
}

size_t LongestCommonSubsequence(const std::vector<std::string> &a,
                                const std::vector<std::string> &b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double RougeL(const std::vector<EvalPair> &input, double beta) {
  std::vector<EvalPair> pairs = Normalize(input);
  double sum = 0.0;
  for (const EvalPair &p : pairs) {
    double best = 0.0;
    for (const Tokens &r : p.references) {
      if (p.candidate.empty() || r.empty()) continue;
      double lcs = static_cast<double>(LongestCommonSubsequence(p.candidate, r));
      if (lcs == 0.0) continue;
      double prec = lcs / p.candidate.size();
      double rec = lcs / r.size();
      double f = (1 + beta * beta) * prec * rec / (rec + beta * beta * prec);
      best = std::max(best, f);
    }
    sum += best;
  }
  return sum / pairs.size();
}

std::vector<double> CiderPerOrder(const std::vector<EvalPair> &input, int max_n,
                                  double sigma) {
  std::vector<EvalPair> pairs = Normalize(input);
  if (pairs.size() < 2) {
    throw DomainError("CIDEr needs at least two pairs for document frequencies");
  }
  const double log_docs = std::log(static_cast<double>(pairs.size()));
  std::vector<double> per_order(max_n, 0.0);

  for (int n = 1; n <= max_n; ++n) {
    // Document frequency: pairs whose reference set contains the n-gram.
    std::map<Tokens, long> df;
    for (const EvalPair &p : pairs) {
      std::set<Tokens> present;
      for (const Tokens &r : p.references) {
        for (const auto &[g, cnt] : CountNgrams(r, n)) present.insert(g);
      }
      for (const Tokens &g : present) df[g]++;
    }
    auto vectorize = [&](const Tokens &tokens, double *norm) {
      std::map<Tokens, double> vec;
      double sq = 0.0;
      for (const auto &[g, cnt] : CountNgrams(tokens, n)) {
        auto it = df.find(g);
        double dfv = it == df.end() ? 1.0 : static_cast<double>(it->second);
        double w = cnt * (log_docs - std::log(std::max(1.0, dfv)));
        vec[g] = w;
        sq += w * w;
      }
      *norm = std::sqrt(sq);
      return vec;
    };

    double corpus = 0.0;
    for (const EvalPair &p : pairs) {
      double cand_norm = 0.0;
      std::map<Tokens, double> cand = vectorize(p.candidate, &cand_norm);
      double pair_score = 0.0;
      for (const Tokens &r : p.references) {
        double ref_norm = 0.0;
        std::map<Tokens, double> ref = vectorize(r, &ref_norm);
        double sim = 0.0;
        if (cand_norm > 0.0 && ref_norm > 0.0) {
          double dot = 0.0;
          for (const auto &[g, w] : cand) {
            auto it = ref.find(g);
            if (it != ref.end()) dot += w * it->second;
          }
          sim = dot / (cand_norm * ref_norm);
        }
        double delta = static_cast<double>(p.candidate.size()) -
                       static_cast<double>(r.size());
        sim *= std::exp(-(delta * delta) / (2.0 * sigma * sigma));
        pair_score += sim;
      }
      corpus += pair_score / p.references.size();
    }
    per_order[n - 1] = corpus / pairs.size();
  }
  return per_order;
}

double Cider(const std::vector<EvalPair> &pairs, int max_n, double sigma) {
  std::vector<double> per_order = CiderPerOrder(pairs, max_n, sigma);
  double sum = 0.0;
  for (double v : per_order) sum += v;
  return kCiderScale * sum / max_n;
}

std::string NormalizeEntity(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::ispunct(static_cast<unsigned char>(c))) {
      out += ' ';
    } else {
      out += c;
    }
  }
  return NormalizeName(out);
}

double EntityJaccard(std::string_view a, std::string_view b) {
  std::vector<std::string> ta = SplitWhitespace(NormalizeEntity(a));
  std::vector<std::string> tb = SplitWhitespace(NormalizeEntity(b));
  std::set<std::string> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 0.0;
  size_t inter = 0;
  for (const std::string &t : sa) inter += sb.count(t);
  return static_cast<double>(inter) / (sa.size() + sb.size() - inter);
}

bool EntitiesMatch(std::string_view a, std::string_view b,
                   const FuzzyMatchConfig &config) {
  std::string na = NormalizeEntity(a), nb = NormalizeEntity(b);
  if (na.empty() || nb.empty()) return false;
  if (na.find(nb) != std::string::npos || nb.find(na) != std::string::npos) {
    return true;
  }
  return EntityJaccard(na, nb) >= config.jaccard_threshold;
}

EntityScore EntityF1(const std::vector<EvalPair> &pairs,
                     const FuzzyMatchConfig &config) {
  EntityScore score;
  for (const EvalPair &p : pairs) {
    std::vector<std::string> pred, ref;
    for (const std::string &e : p.cand_entities) {
      if (!NormalizeEntity(e).empty()) pred.push_back(e);
    }
    for (const std::string &e : p.ref_entities) {
      if (!NormalizeEntity(e).empty()) ref.push_back(e);
    }
    score.predicted += static_cast<long>(pred.size());
    score.reference += static_cast<long>(ref.size());

    std::vector<std::tuple<double, size_t, size_t>> edges;
    for (size_t i = 0; i < pred.size(); ++i) {
      for (size_t j = 0; j < ref.size(); ++j) {
        if (EntitiesMatch(pred[i], ref[j], config)) {
          edges.emplace_back(EntityJaccard(pred[i], ref[j]), i, j);
        }
      }
    }
    std::stable_sort(edges.begin(), edges.end(), [](const auto &a, const auto &b) {
      return std::get<0>(a) > std::get<0>(b);
    });
    std::vector<bool> used_pred(pred.size(), false), used_ref(ref.size(), false);
    for (const auto &[jac, i, j] : edges) {
      if (used_pred[i] || used_ref[j]) continue;
      used_pred[i] = used_ref[j] = true;
      ++score.matched;
    }
  }
  if (score.predicted > 0) {
    score.precision = static_cast<double>(score.matched) / score.predicted;
  }
  if (score.reference > 0) {
    score.recall = static_cast<double>(score.matched) / score.reference;
  }
  if (score.precision + score.recall > 0.0) {
    score.f1 = 2 * score.precision * score.recall /
               (score.precision + score.recall);
  }
  return score;
}

EvalReport Evaluate(const std::vector<EvalPair> &pairs,
                    const FuzzyMatchConfig &config) {
  EvalReport report;
  report.n = static_cast<long>(pairs.size());
  std::vector<double> bleu = Bleu(pairs, 4);
  std::copy(bleu.begin(), bleu.end(), report.bleu.begin());
  report.rouge_l = RougeL(pairs);
  if (pairs.size() >= 2) {
    report.cider = Cider(pairs);
    report.cider_available = true;
  }
  report.entity = EntityF1(pairs, config);
  return report;
}

}  // namespace entcap
