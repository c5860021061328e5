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

#include <gtest/gtest.h>

#include <thread>

#include "prscrub/annotate/store.h"
#include "prscrub/error.h"
#include "prscrub/manifest.h"
#include "test_util.h"

namespace prscrub::annotate {
namespace {

using prscrub::testing::ReadFile;
using prscrub::testing::TempDir;
using prscrub::testing::WriteFile;

RatingRecord Rating(std::string sample, std::string rater, std::string arm, int r, int d, int c) {
  RatingRecord x;
  x.sample_id = std::move(sample);
  x.rater_id = std::move(rater);
  x.arm = std::move(arm);
  x.relevance = r;
  x.descriptiveness = d;
  x.clarity = c;
  return x;
}

NoiseLabel Label(std::string sample, std::string h, std::string rater, Verdict v) {
  return {std::move(sample), std::move(h), std::move(rater), v, ""};
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no prscrub::Error thrown";
  return ErrorCode::kIoError;
}

TEST(Checksum, SixteenHexOfSha256) {
  EXPECT_EQ(RecordChecksum("abc"), "ba7816bf8f01cfea");
  EXPECT_EQ(RecordChecksum(""), "e3b0c44298fc1c14");
}

TEST(JudgmentStore, MissingFileIsEmpty) {
  TempDir dir;
  const JudgmentStore s = JudgmentStore::Open(dir / "none.jsonl");
  EXPECT_TRUE(s.ratings().empty());
  EXPECT_TRUE(s.labels().empty());
}

TEST(JudgmentStore, RoundTripsThroughDisk) {
  TempDir dir;
  const auto path = dir / "store.jsonl";
  {
    JudgmentStore s = JudgmentStore::Open(path);
    EXPECT_EQ(s.AppendRating(Rating("a#1", "r1", "A", 4, 3, 2)), AppendResult::kStored);
    EXPECT_EQ(s.AppendRating(Rating("a#1", "r1", "B", 1, 1, 1)), AppendResult::kStored);
    EXPECT_EQ(s.AppendLabel(Label("a#2", "H3", "r1", Verdict::kFalsePositive)),
              AppendResult::kStored);
  }
  const JudgmentStore s = JudgmentStore::Open(path);
  const auto ratings = s.ratings();
  ASSERT_EQ(ratings.size(), 2u);
  EXPECT_EQ(ratings[0].arm, "A");
  EXPECT_EQ(ratings[0].relevance, 4);
  EXPECT_EQ(ratings[0].descriptiveness, 3);
  EXPECT_EQ(ratings[0].clarity, 2);
  EXPECT_FALSE(ratings[0].timestamp.empty());
  ASSERT_EQ(s.labels().size(), 1u);
  EXPECT_EQ(s.labels()[0].verdict, Verdict::kFalsePositive);
  EXPECT_EQ(s.labels()[0].heuristic, "H3");
}

TEST(JudgmentStore, LineFormatCarriesChecksumOfRecord) {
  TempDir dir;
  const auto path = dir / "store.jsonl";
  JudgmentStore s = JudgmentStore::Open(path);
  RatingRecord r = Rating("a#1", "r1", "A", 4, 3, 2);
  r.timestamp = "2026-01-01T00:00:00Z";
  s.AppendRating(r);
  const std::string text = ReadFile(path);
  ASSERT_EQ(text.back(), '\n');
  const OrderedJson line = OrderedJson::parse(text);
  const std::string record = line.at("record").dump();
  EXPECT_EQ(record,
            R"({"type":"rating","sample_id":"a#1","rater_id":"r1","arm":"A","relevance":4,)"
            R"("descriptiveness":3,"clarity":2,"timestamp":"2026-01-01T00:00:00Z"})");
  EXPECT_EQ(line.at("checksum"), Sha256Hex(record).substr(0, 16));
}

TEST(JudgmentStore, DuplicateAndConflict) {
  TempDir dir;
  const auto path = dir / "store.jsonl";
  JudgmentStore s = JudgmentStore::Open(path);
  s.AppendRating(Rating("a#1", "r1", "A", 4, 3, 2));
  const auto size = ReadFile(path).size();
  EXPECT_EQ(s.AppendRating(Rating("a#1", "r1", "A", 4, 3, 2)), AppendResult::kDuplicate);
  EXPECT_EQ(s.AppendRating(Rating("a#1", "r1", "A", 4, 3, 1)), AppendResult::kConflict);
  EXPECT_EQ(ReadFile(path).size(), size);
  // Other raters and arms are separate keys.
  EXPECT_EQ(s.AppendRating(Rating("a#1", "r2", "A", 1, 1, 1)), AppendResult::kStored);
  EXPECT_EQ(s.AppendRating(Rating("a#1", "r1", "B", 1, 1, 1)), AppendResult::kStored);

  s.AppendLabel(Label("a#1", "H1", "r1", Verdict::kTruePositive));
  EXPECT_EQ(s.AppendLabel(Label("a#1", "H1", "r1", Verdict::kTruePositive)),
            AppendResult::kDuplicate);
  EXPECT_EQ(s.AppendLabel(Label("a#1", "H1", "r1", Verdict::kFalsePositive)),
            AppendResult::kConflict);
  EXPECT_EQ(s.AppendLabel(Label("a#1", "H2", "r1", Verdict::kFalsePositive)),
            AppendResult::kStored);
  EXPECT_EQ(s.ratings().size(), 3u);
  EXPECT_EQ(s.labels().size(), 2u);
}

TEST(JudgmentStore, AppendOnlyPrefixProperty) {
  TempDir dir;
  const auto path = dir / "store.jsonl";
  std::string before;
  for (int i = 0; i < 30; ++i) {
    JudgmentStore s = JudgmentStore::Open(path);
    EXPECT_EQ(s.ratings().size(), static_cast<std::size_t>(i));
    s.AppendRating(Rating("s#" + std::to_string(i), "r", "A", 1 + i % 4, 2, 3));
    const std::string after = ReadFile(path);
    ASSERT_GT(after.size(), before.size());
    EXPECT_EQ(after.compare(0, before.size(), before), 0);
    before = after;
  }
}

TEST(JudgmentStore, TornFinalLine) {
  TempDir dir;
  const auto path = dir / "store.jsonl";
  {
    JudgmentStore s = JudgmentStore::Open(path);
    s.AppendRating(Rating("a#1", "r1", "A", 4, 3, 2));
  }
  std::string text = ReadFile(path);
  WriteFile(path, text + text.substr(0, text.size() / 2));
  EXPECT_EQ(CodeOf([&] { JudgmentStore::Open(path); }), ErrorCode::kCorruptStore);
  const JudgmentStore lenient = JudgmentStore::Open(path, /*strict=*/false);
  EXPECT_EQ(lenient.ratings().size(), 1u);
  EXPECT_EQ(lenient.skipped_lines(), 1u);
}

TEST(JudgmentStore, ChecksumMismatchAndGarbage) {
  TempDir dir;
  const auto path = dir / "store.jsonl";
  {
    JudgmentStore s = JudgmentStore::Open(path);
    s.AppendRating(Rating("a#1", "r1", "A", 4, 3, 2));
    s.AppendRating(Rating("a#2", "r1", "A", 4, 3, 2));
  }
  std::string text = ReadFile(path);
  const auto pos = text.find("\"relevance\":4");
  text[pos + 12] = '3';  // edit the first record without fixing its checksum
  WriteFile(path, text + "not json\n" + R"({"record":{"type":"rating"}})" + "\n");
  try {
    JudgmentStore::Open(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptStore);
    EXPECT_NE(e.detail().find(":1:"), std::string::npos) << e.detail();
  }
  const JudgmentStore lenient = JudgmentStore::Open(path, false);
  ASSERT_EQ(lenient.ratings().size(), 1u);
  EXPECT_EQ(lenient.ratings()[0].sample_id, "a#2");
  EXPECT_EQ(lenient.skipped_lines(), 3u);
}

TEST(JudgmentStore, ValidChecksumButUnknownType) {
  TempDir dir;
  const auto path = dir / "store.jsonl";
  const std::string record = R"({"type":"comment","text":"hi"})";
  WriteFile(path, R"({"record":)" + record + R"(,"checksum":")" + RecordChecksum(record) +
                      "\"}\n");
  EXPECT_EQ(CodeOf([&] { JudgmentStore::Open(path); }), ErrorCode::kCorruptStore);
}

TEST(JudgmentStore, ConcurrentAppendsAllLand) {
  TempDir dir;
  const auto path = dir / "store.jsonl";
  {
    JudgmentStore s = JudgmentStore::Open(path);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        for (int i = 0; i < 25; ++i) {
          s.AppendRating(Rating("s#" + std::to_string(i), "r" + std::to_string(t), "A", 2, 2, 2));
        }
      });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(s.ratings().size(), 100u);
  }
  EXPECT_EQ(JudgmentStore::Open(path).ratings().size(), 100u);
}

}  // namespace
}  // namespace prscrub::annotate
