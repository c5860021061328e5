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

#ifndef PRSCRUB_ANNOTATE_SESSION_H_
#define PRSCRUB_ANNOTATE_SESSION_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prscrub/heuristics.h"
#include "prscrub/jsonl.h"

namespace prscrub::annotate {

inline constexpr const char* kCleanedModel = "cleaned_model";
inline constexpr const char* kUncleanedModel = "uncleaned_model";
inline constexpr const char* kSessionFormat = "prscrub-session/1";

enum class SessionKind { kStage1, kStage2 };

// One line of the stage-1 input file: a test sample with the descriptions
// generated by both models.
struct ScoredDescription {
  std::string id;
  std::vector<std::string> input_sequence;
  std::string reference;
  std::string cleaned;
  std::string uncleaned;
};

// Throws MissingArm when either generated description is absent.
ScoredDescription ScoredDescriptionFromJson(const Json& j);
std::vector<ScoredDescription> ReadScoredDescriptions(
    const std::filesystem::path& path);

struct Stage1Item {
  std::string sample_id;
  std::vector<std::string> input_sequence;
  std::string ground_truth;
  std::string arm_a;
  std::string arm_b;
};

struct Stage2Item {
  std::string sample_id;
  std::string heuristic;  // "H1".."H4"
  std::vector<std::string> input_sequence;
  std::string ground_truth;
  std::vector<std::string> removed_commits;  // H1 only
};

struct Session {
  SessionKind kind = SessionKind::kStage1;
  std::uint64_t seed = 0;
  bool reconciliation = false;
  std::vector<Stage1Item> stage1_items;
  std::vector<Stage2Item> stage2_items;
  std::map<std::string, std::string> rules;  // heuristic -> rule text
  // sample_id -> model shown as arm A. Absent once stripped for serving.
  std::optional<std::map<std::string, std::string>> sealed_key;

  std::size_t size() const {
    return kind == SessionKind::kStage1 ? stage1_items.size()
                                        : stage2_items.size();
  }
};

Session BuildStage1Session(const std::vector<ScoredDescription>& pairs,
                           std::size_t n, std::uint64_t seed);

struct FlaggedSample {
  std::string id;
  HeuristicFlags flags;
};

OrderedJson FlagsToJson(const std::string& id, const HeuristicFlags& flags);
FlaggedSample FlaggedSampleFromJson(const Json& j);
std::vector<FlaggedSample> ReadFlags(const std::filesystem::path& path);

// Samples `per_heuristic_n` flagged PRs for each of H1..H4 independently.
// `samples` supplies the pre-cleaning input sequence and ground truth.
// Throws InsufficientFlagged naming the first short stratum.
Session BuildStage2Session(const std::vector<FlaggedSample>& flags,
                           const std::vector<PrSample>& samples,
                           std::size_t per_heuristic_n, std::uint64_t seed,
                           const Heuristics& heuristics);

// A stage-2 session restricted to the (sample, heuristic) pairs listed in a
// reconciliation worksheet.
Session BuildReconciliationSession(const Session& stage2,
                                   const std::vector<Json>& worksheet);

OrderedJson SessionToJson(const Session& session);
Session SessionFromJson(const Json& j);
void WriteSession(const Session& session, const std::filesystem::path& path);
Session ReadSession(const std::filesystem::path& path);

}  // namespace prscrub::annotate

#endif  // PRSCRUB_ANNOTATE_SESSION_H_
