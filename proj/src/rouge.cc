// Copyright 2026 The prscrub Authors.
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

#include "prscrub/rouge.h"

#include <algorithm>
#include <cmath>

#include "prscrub/error.h"
#include "prscrub/parallel.h"

namespace prscrub {

double F1(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

RougeScore RougeCounts::Score() const {
  RougeScore s;
  s.precision = gen_total == 0 ? 0.0
                               : static_cast<double>(overlap) /
                                     static_cast<double>(gen_total);
  s.recall = ref_total == 0 ? 0.0
                            : static_cast<double>(overlap) /
                                  static_cast<double>(ref_total);
  s.f1 = F1(s.precision, s.recall);
  return s;
}

RougeCounts& RougeCounts::operator+=(const RougeCounts& other) {
  overlap += other.overlap;
  gen_total += other.gen_total;
  ref_total += other.ref_total;
  return *this;
}

NgramCounts CountNgrams(const TokenList& tokens, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidParams, "n-gram order must be >= 1");
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

RougeCounts RougeNCounts(const TokenList& gen, const TokenList& ref,
                         std::size_t n) {
  const NgramCounts gen_counts = CountNgrams(gen, n);
  const NgramCounts ref_counts = CountNgrams(ref, n);
  RougeCounts c;
  c.gen_total = gen.size() >= n ? gen.size() - n + 1 : 0;
  c.ref_total = ref.size() >= n ? ref.size() - n + 1 : 0;
  // Merge join over the two sorted maps.
  auto g = gen_counts.begin();
  auto r = ref_counts.begin();
  while (g != gen_counts.end() && r != ref_counts.end()) {
    if (g->first < r->first) {
      ++g;
    } else if (r->first < g->first) {
      ++r;
    } else {
      c.overlap += std::min(g->second, r->second);
      ++g;
      ++r;
    }
  }
  return c;
}

RougeScore RougeN(const TokenList& gen, const TokenList& ref, std::size_t n) {
  return RougeNCounts(gen, ref, n).Score();
}

std::size_t LcsLength(const TokenList& a, const TokenList& b) {
  const TokenList& rows = a.size() >= b.size() ? a : b;
  const TokenList& cols = a.size() >= b.size() ? b : a;
  std::vector<std::size_t> prev(cols.size() + 1, 0);
  std::vector<std::size_t> curr(cols.size() + 1, 0);
  for (const auto& x : rows) {
    for (std::size_t j = 1; j <= cols.size(); ++j) {
      curr[j] = x == cols[j - 1] ? prev[j - 1] + 1
                                 : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[cols.size()];
}

RougeCounts RougeLCounts(const TokenList& gen, const TokenList& ref) {
  RougeCounts c;
  c.overlap = LcsLength(gen, ref);
  c.gen_total = gen.size();
  c.ref_total = ref.size();
  return c;
}

RougeScore RougeL(const TokenList& gen, const TokenList& ref) {
  return RougeLCounts(gen, ref).Score();
}

std::string_view AggregationModeName(AggregationMode mode) {
  return mode == AggregationMode::kExampleMean ? "example_mean" : "corpus_sum";
}

AggregationMode ParseAggregationMode(std::string_view name) {
  if (name == "example_mean") return AggregationMode::kExampleMean;
  if (name == "corpus_sum") return AggregationMode::kCorpusSum;
  throw Error(ErrorCode::kInvalidParams,
              "unknown aggregation mode '" + std::string(name) + "'");
}

namespace {

struct PairCounts {
  RougeCounts r1, r2, rl;
};

RougeReport Aggregate(const std::vector<PairCounts>& per_pair,
                      AggregationMode mode) {
  RougeReport report;
  report.mode = mode;
  report.pair_count = per_pair.size();
  if (mode == AggregationMode::kCorpusSum) {
    PairCounts total;
    for (const auto& p : per_pair) {
      total.r1 += p.r1;
      total.r2 += p.r2;
      total.rl += p.rl;
    }
    report.rouge1 = total.r1.Score();
    report.rouge2 = total.r2.Score();
    report.rougeL = total.rl.Score();
    return report;
  }
  const auto accumulate = [](RougeScore& acc, const RougeScore& s) {
    acc.precision += s.precision;
    acc.recall += s.recall;
    acc.f1 += s.f1;
  };
  for (const auto& p : per_pair) {
    accumulate(report.rouge1, p.r1.Score());
    accumulate(report.rouge2, p.r2.Score());
    accumulate(report.rougeL, p.rl.Score());
  }
  const double n = static_cast<double>(per_pair.size());
  for (RougeScore* s : {&report.rouge1, &report.rouge2, &report.rougeL}) {
    s->precision /= n;
    s->recall /= n;
    s->f1 /= n;
  }
  return report;
}

}  // namespace

RougeReport ScoreTokenizedCorpus(
    const std::vector<std::pair<TokenList, TokenList>>& pairs,
    AggregationMode mode, unsigned jobs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no pairs to score");
  std::vector<PairCounts> per_pair(pairs.size());
  ParallelFor(pairs.size(), jobs, [&](std::size_t i) {
    const auto& [gen, ref] = pairs[i];
    per_pair[i] = {RougeNCounts(gen, ref, 1), RougeNCounts(gen, ref, 2),
                   RougeLCounts(gen, ref)};
  });
  return Aggregate(per_pair, mode);
}

RougeReport ScoreCorpus(const std::vector<TextPair>& pairs,
                        AggregationMode mode, unsigned jobs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no pairs to score");
  std::vector<std::pair<TokenList, TokenList>> tokenized(pairs.size());
  ParallelFor(pairs.size(), jobs, [&](std::size_t i) {
    tokenized[i] = {Tokenize(pairs[i].generated), Tokenize(pairs[i].reference)};
  });
  return ScoreTokenizedCorpus(tokenized, mode, jobs);
}

double ToPercent(double value) { return std::round(value * 10000.0) / 100.0; }

}  // namespace prscrub
