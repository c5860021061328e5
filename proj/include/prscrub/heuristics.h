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

#ifndef PRSCRUB_HEURISTICS_H_
#define PRSCRUB_HEURISTICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "prscrub/model.h"
#include "prscrub/patterns.h"

namespace prscrub {

// How H3 counts reference words that never appear in the input.
enum class MissingMode {
  kSet,       // distinct reference tokens
  kMultiset,  // reference token occurrences
};

// Whether H3/H4 see the input sequence before or after H1 deletion.
enum class LengthBasis { kAfterH1, kBeforeH1 };

struct Thresholds {
  double missing_fraction_cutoff = 0.80;  // H3 fires when fraction > cutoff
  double length_ratio_cutoff = 0.5;       // H4 fires when in <= cutoff * ref
  MissingMode missing_mode = MissingMode::kSet;
  LengthBasis basis = LengthBasis::kAfterH1;

  // Throws InvalidParams unless both cutoffs are in (0, 1].
  void Validate() const;
};

struct HeuristicFlags {
  std::size_t h1_removed = 0;
  bool h1_emptied = false;
  bool h2 = false;
  bool h3 = false;
  bool h4 = false;
  bool removed = false;

  bool h1() const { return h1_removed > 0 || h1_emptied; }
  bool operator==(const HeuristicFlags&) const = default;
};

// Compiled pattern tables shared read-only across workers.
class Heuristics {
 public:
  explicit Heuristics(const PatternConfig& config = DefaultPatternConfig(),
                      Thresholds thresholds = {});

  bool IsTrivialCommit(std::string_view message) const {
    return commit_patterns_.Matches(message);
  }
  bool IsTrivialDescription(std::string_view description) const {
    return description_patterns_.Matches(description);
  }

  // Returns the cleaned sample iff no heuristic fired.
  std::pair<std::optional<PrSample>, HeuristicFlags> Apply(
      const PrSample& sample) const;

  // First reason in H1-emptied, H2, H3, H4 order; nullopt when kept.
  static std::optional<DropReason> PrimaryReason(const HeuristicFlags& flags);

  const Thresholds& thresholds() const { return thresholds_; }
  const PatternConfig& config() const { return config_; }

 private:
  PatternConfig config_;
  Thresholds thresholds_;
  PatternSet commit_patterns_;
  PatternSet description_patterns_;
};

// Convenience wrappers over the default tables.
bool IsTrivialCommit(std::string_view message);
bool IsTrivialDescription(std::string_view description);

// Share of the reference vocabulary absent from the input. Throws
// EmptyReference when the reference has no tokens.
double MissingFraction(const TokenList& reference, const TokenList& input,
                       MissingMode mode = MissingMode::kSet);

bool IsInadequate(const TokenList& input, const TokenList& reference,
                  double length_ratio_cutoff = 0.5);

std::pair<std::optional<PrSample>, HeuristicFlags> ApplyHeuristics(
    const PrSample& sample, const Thresholds& thresholds = {});

}  // namespace prscrub

#endif  // PRSCRUB_HEURISTICS_H_
