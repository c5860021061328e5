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

#ifndef PRSCRUB_PREPROCESS_H_
#define PRSCRUB_PREPROCESS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prscrub/model.h"

namespace prscrub {

// Counters in filter order. initial - sum(drops) == left always holds.
struct PreprocessStats {
  std::size_t initial = 0;
  std::size_t too_few_commits = 0;
  std::size_t too_many_commits = 0;
  std::size_t non_ascii = 0;
  std::size_t bot_written = 0;
  std::size_t empty_description = 0;
  std::size_t left = 0;

  bool operator==(const PreprocessStats&) const = default;
  PreprocessStats& operator+=(const PreprocessStats& other);
  bool Balanced() const;
};

inline constexpr std::size_t kMinCommits = 2;
inline constexpr std::size_t kMaxCommits = 20;

// Removes markdown task-list lines ("- [ ]", "* [x]", ...).
std::string StripChecklists(std::string_view body);

// The first failing filter for one PR, or nullopt if it survives.
std::optional<DropReason> PreprocessDropReason(const RawPullRequest& pr);

struct PreprocessResult {
  std::vector<PrSample> samples;
  PreprocessStats stats;
};

PreprocessResult Preprocess(const std::vector<RawPullRequest>& prs);

}  // namespace prscrub

#endif  // PRSCRUB_PREPROCESS_H_
