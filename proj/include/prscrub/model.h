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

#ifndef PRSCRUB_MODEL_H_
#define PRSCRUB_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prscrub {

using TokenList = std::vector<std::string>;

// One crawled pull request, as stored in a corpus JSONL file.
struct RawPullRequest {
  std::string repo;  // owner/name
  std::int64_t number = 0;
  std::string title;
  std::string body;
  std::vector<std::string> commits;  // oldest first
  bool author_is_bot = false;
  std::string url;
  bool commits_truncated = false;
  // OPEN / CLOSED / MERGED when known; empty for corpora that never had it.
  std::string state;

  bool operator==(const RawPullRequest&) const = default;
};

// A training sample: commit messages in, description out.
//
// The token lists are always tokenize() of the texts; construct through
// MakeSample() so they cannot drift.
struct PrSample {
  std::string id;  // repo#number
  std::vector<std::string> input_sequence;
  std::string reference_description;
  TokenList input_tokens;
  TokenList reference_tokens;

  bool operator==(const PrSample&) const = default;
};

PrSample MakeSample(std::string id, std::vector<std::string> input_sequence,
                    std::string reference_description);

std::string SampleId(const RawPullRequest& pr);

// Why preprocessing or cleaning dropped a PR. First failing check wins.
enum class DropReason {
  kTooFewCommits,
  kTooManyCommits,
  kNonAscii,
  kBotAuthor,
  kEmptyDescription,
  kTrivialDescription,
  kIrrelevant,
  kInadequate,
  kEmptyInputAfterH1,
};

std::string_view DropReasonName(DropReason reason);

// Lowercases and splits on every maximal run of characters that are neither
// alphanumeric nor '#'. A '#' survives only when the next character is a
// digit, so "#577" is one token. Bytes >= 0x80 count as word characters and
// are passed through untouched.
TokenList Tokenize(std::string_view text);

std::size_t WordCount(std::string_view text);

// Commit messages joined with '\n'.
std::string JoinInputSequence(const std::vector<std::string>& messages);

}  // namespace prscrub

#endif  // PRSCRUB_MODEL_H_
