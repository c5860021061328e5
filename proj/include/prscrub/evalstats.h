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

#ifndef PRSCRUB_EVALSTATS_H_
#define PRSCRUB_EVALSTATS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prscrub {

// ---------------------------------------------------------------------------
// Sample sizing

struct CochranParams {
  double confidence = 0.95;  // (0, 1)
  double margin = 0.05;      // (0, 1)
  double proportion = 0.5;   // [0, 1]
};

// Standard normal quantile. Acklam's rational approximation polished by one
// Halley step against erfc; absolute error is far below 1e-8 on (0, 1).
double InverseNormalCdf(double p);

// Two-sided critical value: the (1 + confidence) / 2 quantile.
double TwoSidedZ(double confidence);

// ceil(z^2 p (1-p) / e^2), no finite-population correction. Throws
// InvalidParams for out-of-range parameters.
std::int64_t CochranSampleSize(const CochranParams& params);

// ---------------------------------------------------------------------------
// Agreement

struct KappaResult {
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  double kappa = 0.0;
  std::size_t n_items = 0;
};

// Unweighted Cohen's kappa over nominal labels. Throws EmptyInput or
// LengthMismatch.
KappaResult CohenKappa(const std::vector<std::string>& labels_a,
                       const std::vector<std::string>& labels_b);

// ---------------------------------------------------------------------------
// Heuristic auditing

enum class Verdict { kTruePositive, kFalsePositive };

std::string_view VerdictName(Verdict v);  // "TP" / "FP"
Verdict ParseVerdict(std::string_view name);

struct HeuristicAudit {
  std::string heuristic;
  std::size_t tp = 0;
  std::size_t fp = 0;
  double accuracy = 0.0;  // tp / (tp + fp)
};

// Throws EmptyInput when labels is empty.
HeuristicAudit AuditHeuristic(
    std::string heuristic,
    const std::vector<std::pair<std::string, Verdict>>& labels);

// ---------------------------------------------------------------------------
// Stage-1 score distributions

enum class Criterion { kRelevance, kDescriptiveness, kClarity };

inline constexpr std::array<Criterion, 3> kCriteria = {
    Criterion::kRelevance, Criterion::kDescriptiveness, Criterion::kClarity};

std::string_view CriterionName(Criterion c);
// Throws UnknownCriterion.
Criterion ParseCriterion(std::string_view name);

inline constexpr std::array<std::string_view, 4> kScaleLabels = {
    "very poor", "poor", "good", "very good"};

struct RatingRecord {
  std::string sample_id;
  std::string rater_id;
  // "A"/"B" while blinded; the model name once unblinded.
  std::string arm;
  int relevance = 0;
  int descriptiveness = 0;
  int clarity = 0;
  std::string timestamp;

  int Score(Criterion c) const;
};

// Counts for scores 1..4 (index 0..3).
using ScoreHistogram = std::array<std::size_t, 4>;

struct ArmDistribution {
  std::map<Criterion, ScoreHistogram> counts;
  std::size_t ratings = 0;

  double Percent(Criterion c, int score) const;
  double Mean(Criterion c) const;
};

// Histograms per arm and criterion. `criteria` names the columns to report
// (all three when empty). Throws UnknownCriterion for an unknown name and
// InvalidScore for a score outside 1..4.
std::map<std::string, ArmDistribution> ScoreDistribution(
    const std::vector<RatingRecord>& ratings,
    const std::vector<std::string>& criteria = {});

}  // namespace prscrub

#endif  // PRSCRUB_EVALSTATS_H_
