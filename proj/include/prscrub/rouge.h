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

#ifndef PRSCRUB_ROUGE_H_
#define PRSCRUB_ROUGE_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prscrub/model.h"

namespace prscrub {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Harmonic mean; 0 when both inputs are 0.
double F1(double precision, double recall);

// Raw counts behind one score, kept so they can be pooled across a corpus.
struct RougeCounts {
  std::size_t overlap = 0;
  std::size_t gen_total = 0;
  std::size_t ref_total = 0;

  RougeScore Score() const;
  RougeCounts& operator+=(const RougeCounts& other);
};

using Ngram = std::vector<std::string>;
using NgramCounts = std::map<Ngram, std::size_t>;

// Contiguous n-grams with multiplicity. n must be >= 1.
NgramCounts CountNgrams(const TokenList& tokens, std::size_t n);

// Clipped n-gram overlap: sum over n-grams of min(count_gen, count_ref).
RougeCounts RougeNCounts(const TokenList& gen, const TokenList& ref,
                         std::size_t n);
RougeScore RougeN(const TokenList& gen, const TokenList& ref, std::size_t n);

// Two-row dynamic program, O(|a|·|b|) time, O(min) space.
std::size_t LcsLength(const TokenList& a, const TokenList& b);

RougeCounts RougeLCounts(const TokenList& gen, const TokenList& ref);
RougeScore RougeL(const TokenList& gen, const TokenList& ref);

enum class AggregationMode { kExampleMean, kCorpusSum };

std::string_view AggregationModeName(AggregationMode mode);
AggregationMode ParseAggregationMode(std::string_view name);

struct RougeReport {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
  AggregationMode mode = AggregationMode::kExampleMean;
  std::size_t pair_count = 0;
};

struct TextPair {
  std::string generated;
  std::string reference;
};

// Throws EmptyCorpus on an empty input. `jobs` > 1 scores pairs on worker
// threads; the reduction always runs in input order.
RougeReport ScoreCorpus(const std::vector<TextPair>& pairs,
                        AggregationMode mode, unsigned jobs = 1);
RougeReport ScoreTokenizedCorpus(
    const std::vector<std::pair<TokenList, TokenList>>& pairs,
    AggregationMode mode, unsigned jobs = 1);

// Rounds a [0,1] value to a [0,100] percentage with two decimals.
double ToPercent(double value);

}  // namespace prscrub

#endif  // PRSCRUB_ROUGE_H_
