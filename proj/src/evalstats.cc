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

#include "prscrub/evalstats.h"

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "prscrub/error.h"

namespace prscrub {

double InverseNormalCdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "quantile probability must be in (0, 1)");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  constexpr double kHigh = 1.0 - kLow;

  double x;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= kHigh) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

double TwoSidedZ(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "confidence must be in (0, 1)");
  }
  return InverseNormalCdf(0.5 + confidence / 2.0);
}

std::int64_t CochranSampleSize(const CochranParams& params) {
  if (!(params.margin > 0.0 && params.margin < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "margin must be in (0, 1)");
  }
  if (!(params.proportion >= 0.0 && params.proportion <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "proportion must be in [0, 1]");
  }
  const double z = TwoSidedZ(params.confidence);
  const double n0 = z * z * params.proportion * (1.0 - params.proportion) /
                    (params.margin * params.margin);
  // Absorb rounding noise so an exact integer n0 does not round up.
  return static_cast<std::int64_t>(std::ceil(n0 - 1e-9));
}

KappaResult CohenKappa(const std::vector<std::string>& labels_a,
                       const std::vector<std::string>& labels_b) {
  if (labels_a.size() != labels_b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(labels_a.size()) + " vs " +
                    std::to_string(labels_b.size()) + " labels");
  }
  if (labels_a.empty()) throw Error(ErrorCode::kEmptyInput, "no labels");

  const auto n = labels_a.size();
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> marginals;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++marginals[labels_a[i]].first;
    ++marginals[labels_b[i]].second;
    agree += labels_a[i] == labels_b[i];
  }
  // Integer sums keep p_e exact.
  std::size_t expected_num = 0;
  for (const auto& [label, m] : marginals) expected_num += m.first * m.second;

  KappaResult r;
  r.n_items = n;
  const double nd = static_cast<double>(n);
  r.observed_agreement = static_cast<double>(agree) / nd;
  r.expected_agreement = static_cast<double>(expected_num) / (nd * nd);
  if (expected_num == n * n) {
    r.kappa = 1.0;  // both raters used one and the same label throughout
  } else {
    // (p_o - p_e) / (1 - p_e) with the common n^2 denominator cancelled.
    r.kappa = (static_cast<double>(agree) * nd - static_cast<double>(expected_num)) /
              (nd * nd - static_cast<double>(expected_num));
  }
  return r;
}

std::string_view VerdictName(Verdict v) {
  return v == Verdict::kTruePositive ? "TP" : "FP";
}

Verdict ParseVerdict(std::string_view name) {
  if (name == "TP") return Verdict::kTruePositive;
  if (name == "FP") return Verdict::kFalsePositive;
  throw Error(ErrorCode::kParseError,
              "verdict must be TP or FP, got '" + std::string(name) + "'");
}

HeuristicAudit AuditHeuristic(
    std::string heuristic,
    const std::vector<std::pair<std::string, Verdict>>& labels) {
  if (labels.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no labels for " + heuristic);
  }
  HeuristicAudit audit;
  audit.heuristic = std::move(heuristic);
  for (const auto& [id, verdict] : labels) {
    (verdict == Verdict::kTruePositive ? audit.tp : audit.fp) += 1;
  }
  audit.accuracy = static_cast<double>(audit.tp) /
                   static_cast<double>(audit.tp + audit.fp);
  return audit;
}

std::string_view CriterionName(Criterion c) {
  switch (c) {
    case Criterion::kRelevance: return "relevance";
    case Criterion::kDescriptiveness: return "descriptiveness";
    case Criterion::kClarity: return "clarity";
  }
  return "";
}

Criterion ParseCriterion(std::string_view name) {
  for (Criterion c : kCriteria) {
    if (CriterionName(c) == name) return c;
  }
  throw Error(ErrorCode::kUnknownCriterion,
              "unknown criterion '" + std::string(name) + "'");
}

int RatingRecord::Score(Criterion c) const {
  switch (c) {
    case Criterion::kRelevance: return relevance;
    case Criterion::kDescriptiveness: return descriptiveness;
    case Criterion::kClarity: return clarity;
  }
  return 0;
}

double ArmDistribution::Percent(Criterion c, int score) const {
  if (ratings == 0) return 0.0;
  const auto it = counts.find(c);
  if (it == counts.end()) return 0.0;
  return 100.0 * static_cast<double>(it->second.at(score - 1)) /
         static_cast<double>(ratings);
}

double ArmDistribution::Mean(Criterion c) const {
  const auto it = counts.find(c);
  if (it == counts.end() || ratings == 0) return 0.0;
  double sum = 0.0;
  for (int s = 1; s <= 4; ++s) sum += s * static_cast<double>(it->second[s - 1]);
  return sum / static_cast<double>(ratings);
}

std::map<std::string, ArmDistribution> ScoreDistribution(
    const std::vector<RatingRecord>& ratings,
    const std::vector<std::string>& criteria) {
  std::vector<Criterion> selected;
  if (criteria.empty()) {
    selected.assign(kCriteria.begin(), kCriteria.end());
  } else {
    for (const auto& name : criteria) selected.push_back(ParseCriterion(name));
  }

  std::map<std::string, ArmDistribution> out;
  for (const auto& r : ratings) {
    ArmDistribution& arm = out[r.arm];
    for (Criterion c : selected) {
      const int s = r.Score(c);
      if (s < 1 || s > 4) {
        throw Error(ErrorCode::kInvalidScore,
                    std::string(CriterionName(c)) + " score " +
                        std::to_string(s) + " for " + r.sample_id);
      }
      ++arm.counts[c][static_cast<std::size_t>(s - 1)];
    }
    ++arm.ratings;
  }
  return out;
}

}  // namespace prscrub
