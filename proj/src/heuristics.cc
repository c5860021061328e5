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

#include "prscrub/heuristics.h"

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "prscrub/error.h"

namespace prscrub {

void Thresholds::Validate() const {
  const auto in_range = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_range(missing_fraction_cutoff)) {
    throw Error(ErrorCode::kInvalidParams,
                "missing_fraction_cutoff must be in (0, 1]");
  }
  if (!in_range(length_ratio_cutoff)) {
    throw Error(ErrorCode::kInvalidParams,
                "length_ratio_cutoff must be in (0, 1]");
  }
}

Heuristics::Heuristics(const PatternConfig& config, Thresholds thresholds)
    : config_(config),
      thresholds_(thresholds),
      commit_patterns_("commit", config.commit),
      description_patterns_("description", config.description) {
  thresholds_.Validate();
}

double MissingFraction(const TokenList& reference, const TokenList& input,
                       MissingMode mode) {
  if (reference.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference has no tokens");
  }
  const std::unordered_set<std::string> present(input.begin(), input.end());
  if (mode == MissingMode::kMultiset) {
    std::size_t missing = 0;
    for (const auto& t : reference) missing += present.count(t) == 0;
    return static_cast<double>(missing) / static_cast<double>(reference.size());
  }
  const std::unordered_set<std::string> vocab(reference.begin(),
                                              reference.end());
  std::size_t missing = 0;
  for (const auto& t : vocab) missing += present.count(t) == 0;
  return static_cast<double>(missing) / static_cast<double>(vocab.size());
}

bool IsInadequate(const TokenList& input, const TokenList& reference,
                  double length_ratio_cutoff) {
  return static_cast<double>(input.size()) <=
         length_ratio_cutoff * static_cast<double>(reference.size());
}

std::pair<std::optional<PrSample>, HeuristicFlags> Heuristics::Apply(
    const PrSample& sample) const {
  HeuristicFlags flags;

  std::vector<std::string> kept;
  kept.reserve(sample.input_sequence.size());
  for (const auto& message : sample.input_sequence) {
    if (IsTrivialCommit(message)) {
      ++flags.h1_removed;
    } else {
      kept.push_back(message);
    }
  }
  flags.h1_emptied = kept.empty();

  const TokenList cleaned_tokens =
      flags.h1_removed == 0 ? sample.input_tokens
                            : Tokenize(JoinInputSequence(kept));
  const TokenList& basis = thresholds_.basis == LengthBasis::kAfterH1
                               ? cleaned_tokens
                               : sample.input_tokens;

  flags.h2 = IsTrivialDescription(sample.reference_description);
  // A description with no words at all cannot be covered by any input.
  flags.h3 = sample.reference_tokens.empty() ||
             MissingFraction(sample.reference_tokens, basis,
                             thresholds_.missing_mode) >
                 thresholds_.missing_fraction_cutoff;
  flags.h4 = IsInadequate(basis, sample.reference_tokens,
                          thresholds_.length_ratio_cutoff);
  flags.removed = flags.h1_emptied || flags.h2 || flags.h3 || flags.h4;

  if (flags.removed) return {std::nullopt, flags};
  if (flags.h1_removed == 0) return {sample, flags};
  PrSample cleaned;
  cleaned.id = sample.id;
  cleaned.input_sequence = std::move(kept);
  cleaned.reference_description = sample.reference_description;
  cleaned.input_tokens = cleaned_tokens;
  cleaned.reference_tokens = sample.reference_tokens;
  return {std::move(cleaned), flags};
}

std::optional<DropReason> Heuristics::PrimaryReason(
    const HeuristicFlags& flags) {
  if (flags.h1_emptied) return DropReason::kEmptyInputAfterH1;
  if (flags.h2) return DropReason::kTrivialDescription;
  if (flags.h3) return DropReason::kIrrelevant;
  if (flags.h4) return DropReason::kInadequate;
  return std::nullopt;
}

namespace {

const Heuristics& DefaultHeuristics() {
  static const Heuristics heuristics;
  return heuristics;
}

}  // namespace

bool IsTrivialCommit(std::string_view message) {
  return DefaultHeuristics().IsTrivialCommit(message);
}

bool IsTrivialDescription(std::string_view description) {
  return DefaultHeuristics().IsTrivialDescription(description);
}

std::pair<std::optional<PrSample>, HeuristicFlags> ApplyHeuristics(
    const PrSample& sample, const Thresholds& thresholds) {
  return Heuristics(DefaultPatternConfig(), thresholds).Apply(sample);
}

}  // namespace prscrub
