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

#include "prscrub/model.h"

#include <utility>

#include "prscrub/error.h"

namespace prscrub {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kAuthError: return "AuthError";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kTransientError: return "TransientError";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kSampleTooLarge: return "SampleTooLarge";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kUnknownCriterion: return "UnknownCriterion";
    case ErrorCode::kInvalidScore: return "InvalidScore";
    case ErrorCode::kMissingArm: return "MissingArm";
    case ErrorCode::kInsufficientFlagged: return "InsufficientFlagged";
    case ErrorCode::kPortInUse: return "PortInUse";
    case ErrorCode::kCorruptStore: return "CorruptStore";
    case ErrorCode::kMissingKey: return "MissingKey";
    case ErrorCode::kInvalidSession: return "InvalidSession";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

std::string_view DropReasonName(DropReason reason) {
  switch (reason) {
    case DropReason::kTooFewCommits: return "TooFewCommits";
    case DropReason::kTooManyCommits: return "TooManyCommits";
    case DropReason::kNonAscii: return "NonAscii";
    case DropReason::kBotAuthor: return "BotAuthor";
    case DropReason::kEmptyDescription: return "EmptyDescription";
    case DropReason::kTrivialDescription: return "TrivialDescription";
    case DropReason::kIrrelevant: return "Irrelevant";
    case DropReason::kInadequate: return "Inadequate";
    case DropReason::kEmptyInputAfterH1: return "EmptyInputAfterH1";
  }
  return "Unknown";
}

namespace {

bool IsAsciiAlnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

bool IsAsciiDigit(unsigned char c) { return c >= '0' && c <= '9'; }

}  // namespace

TokenList Tokenize(std::string_view text) {
  TokenList tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    bool word_char = IsAsciiAlnum(c) || c >= 0x80;
    if (c == '#') {
      word_char = i + 1 < text.size() &&
                  IsAsciiDigit(static_cast<unsigned char>(text[i + 1]));
    }
    if (word_char) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32)
                                             : static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::size_t WordCount(std::string_view text) { return Tokenize(text).size(); }

std::string JoinInputSequence(const std::vector<std::string>& messages) {
  std::string out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += messages[i];
  }
  return out;
}

PrSample MakeSample(std::string id, std::vector<std::string> input_sequence,
                    std::string reference_description) {
  PrSample sample;
  sample.id = std::move(id);
  sample.input_tokens = Tokenize(JoinInputSequence(input_sequence));
  sample.reference_tokens = Tokenize(reference_description);
  sample.input_sequence = std::move(input_sequence);
  sample.reference_description = std::move(reference_description);
  return sample;
}

std::string SampleId(const RawPullRequest& pr) {
  return pr.repo + "#" + std::to_string(pr.number);
}

}  // namespace prscrub
