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

#include "prscrub/preprocess.h"

#include <algorithm>
#include <array>

namespace prscrub {

namespace {

constexpr std::array<std::string_view, 6> kChecklistMarkers = {
    "- [ ]", "- [x]", "- [X]", "* [ ]", "* [x]", "* [X]"};

bool IsBlank(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

std::string_view TrimLeft(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && IsBlank(s[i])) ++i;
  return s.substr(i);
}

bool IsChecklistLine(std::string_view line) {
  const std::string_view trimmed = TrimLeft(line);
  return std::any_of(kChecklistMarkers.begin(), kChecklistMarkers.end(),
                     [&](std::string_view m) { return trimmed.starts_with(m); });
}

bool AllBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), IsBlank);
}

bool HasNonAscii(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return static_cast<unsigned char>(c) > 127;
  });
}

}  // namespace

PreprocessStats& PreprocessStats::operator+=(const PreprocessStats& other) {
  initial += other.initial;
  too_few_commits += other.too_few_commits;
  too_many_commits += other.too_many_commits;
  non_ascii += other.non_ascii;
  bot_written += other.bot_written;
  empty_description += other.empty_description;
  left += other.left;
  return *this;
}

bool PreprocessStats::Balanced() const {
  return initial == too_few_commits + too_many_commits + non_ascii +
                        bot_written + empty_description + left;
}

std::string StripChecklists(std::string_view body) {
  std::string out;
  bool first = true;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string_view::npos) end = body.size();
    const std::string_view line = body.substr(start, end - start);
    if (!IsChecklistLine(line)) {
      if (!first) out.push_back('\n');
      out.append(line);
      first = false;
    }
    start = end + 1;
  }
  return out;
}

std::optional<DropReason> PreprocessDropReason(const RawPullRequest& pr) {
  if (pr.commits.size() < kMinCommits) return DropReason::kTooFewCommits;
  if (pr.commits.size() > kMaxCommits || pr.commits_truncated) {
    return DropReason::kTooManyCommits;
  }
  if (HasNonAscii(pr.body) ||
      std::any_of(pr.commits.begin(), pr.commits.end(),
                  [](const std::string& m) { return HasNonAscii(m); })) {
    return DropReason::kNonAscii;
  }
  if (pr.author_is_bot) return DropReason::kBotAuthor;
  if (AllBlank(StripChecklists(pr.body))) return DropReason::kEmptyDescription;
  return std::nullopt;
}

PreprocessResult Preprocess(const std::vector<RawPullRequest>& prs) {
  PreprocessResult result;
  auto& stats = result.stats;
  for (const auto& pr : prs) {
    ++stats.initial;
    const auto reason = PreprocessDropReason(pr);
    if (!reason) {
      ++stats.left;
      result.samples.push_back(
          MakeSample(SampleId(pr), pr.commits, StripChecklists(pr.body)));
      continue;
    }
    switch (*reason) {
      case DropReason::kTooFewCommits: ++stats.too_few_commits; break;
      case DropReason::kTooManyCommits: ++stats.too_many_commits; break;
      case DropReason::kNonAscii: ++stats.non_ascii; break;
      case DropReason::kBotAuthor: ++stats.bot_written; break;
      case DropReason::kEmptyDescription: ++stats.empty_description; break;
      default: break;
    }
  }
  return result;
}

}  // namespace prscrub
