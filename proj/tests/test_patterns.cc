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

#include "prscrub/error.h"
#include "prscrub/heuristics.h"
#include "prscrub/patterns.h"
#include "test_util.h"

namespace prscrub {
namespace {

TEST(TrivialCommit, MergeRows) {
  EXPECT_TRUE(IsTrivialCommit("Merge branch 'master' into fix-cme-on-start-passive-scan"));
  EXPECT_TRUE(IsTrivialCommit("Merge remote-tracking branch 'origin/dev' into dev"));
  EXPECT_TRUE(IsTrivialCommit("Merge branch 'master' of https://github.com/x/y.git"));
  EXPECT_TRUE(IsTrivialCommit("Merge pull request #12 from a/b"));
  EXPECT_TRUE(IsTrivialCommit("  MERGE BRANCH 'x'  "));
  EXPECT_FALSE(IsTrivialCommit("Merge sort implementation"));
  EXPECT_FALSE(IsTrivialCommit("Merged the two parsers"));
}

TEST(TrivialCommit, FileRows) {
  EXPECT_TRUE(IsTrivialCommit("update changelog"));
  EXPECT_TRUE(IsTrivialCommit("Update CHANGELOG.md"));
  EXPECT_TRUE(IsTrivialCommit("Update README"));
  EXPECT_TRUE(IsTrivialCommit("update .gitignore"));
  EXPECT_TRUE(IsTrivialCommit("Modify Makefile"));
  EXPECT_TRUE(IsTrivialCommit("add gitignore"));
  EXPECT_TRUE(IsTrivialCommit("Add .gitignore."));
  EXPECT_TRUE(IsTrivialCommit("closes #577"));
  EXPECT_FALSE(IsTrivialCommit("Update changelog for fixing CME on Android 8 passive scan start"));
  EXPECT_FALSE(IsTrivialCommit("Add gitignore rules for build output"));
  EXPECT_FALSE(IsTrivialCommit("Fix the shape of PReLU weight"));
  EXPECT_FALSE(IsTrivialCommit("updated changelog"));
  EXPECT_FALSE(IsTrivialCommit("closes the socket on error"));
  EXPECT_FALSE(IsTrivialCommit(""));
}

TEST(TrivialDescription, TableRows) {
  EXPECT_TRUE(IsTrivialDescription("fix issue #21271"));
  EXPECT_TRUE(IsTrivialDescription("Fix issue #12 and also refactor the parser"));
  EXPECT_TRUE(IsTrivialDescription("Revert accidental change to CI"));
  EXPECT_TRUE(IsTrivialDescription("Rolling up 5 commits"));
  EXPECT_TRUE(IsTrivialDescription("rolling down the stack"));
  EXPECT_TRUE(IsTrivialDescription("Roll engine abc..def"));
  EXPECT_TRUE(IsTrivialDescription("roll plugins 1234"));
  EXPECT_TRUE(IsTrivialDescription("Merge to master"));
  EXPECT_TRUE(IsTrivialDescription("update current master"));
  EXPECT_TRUE(IsTrivialDescription("Update readme"));
  EXPECT_FALSE(IsTrivialDescription("Awful formatting problem I know.. :/"));
  EXPECT_FALSE(IsTrivialDescription("Fix the issue with #12"));
  EXPECT_FALSE(IsTrivialDescription("Reverted nothing"));
  EXPECT_FALSE(IsTrivialDescription("Rollback the engine"));
  EXPECT_FALSE(IsTrivialDescription("This fixes issue #12"));
}

TEST(PatternConfig, ShippedFileEqualsBuiltIn) {
  const auto path = std::filesystem::path(PRSCRUB_FIXTURE_DIR) / ".." / ".." / "config" /
                    "patterns.toml";
  EXPECT_EQ(LoadPatternConfig(path.string()), DefaultPatternConfig());
}

TEST(PatternConfig, BuiltInShape) {
  const PatternConfig& c = DefaultPatternConfig();
  EXPECT_EQ(c.commit.size(), 7u);
  EXPECT_EQ(c.description.size(), 6u);
  for (const char* h : {"H1", "H2", "H3", "H4"}) EXPECT_TRUE(c.rules.count(h)) << h;
}

TEST(PatternConfig, ParsesSubset) {
  const PatternConfig c = ParsePatternConfig(R"(
# comment
[[commit]]
starts_with = 'bump'   # trailing comment
continuation = "version \\d+"

[[description]]
starts_with = "wip"

[rules]
H1 = "one\ttwo"
)");
  ASSERT_EQ(c.commit.size(), 1u);
  EXPECT_EQ(c.commit[0], (PatternEntry{"bump", "version \\d+"}));
  ASSERT_EQ(c.description.size(), 1u);
  EXPECT_EQ(c.description[0].continuation, "");
  EXPECT_EQ(c.rules.at("H1"), "one\ttwo");

  const Heuristics h(c);
  EXPECT_TRUE(h.IsTrivialCommit("Bump version 3"));
  EXPECT_FALSE(h.IsTrivialCommit("Bump deps"));
  EXPECT_TRUE(h.IsTrivialDescription("WIP do not merge"));
  EXPECT_FALSE(h.IsTrivialDescription("wipe the cache"));
}

TEST(PatternConfig, RejectsInvalid) {
  for (const char* bad : {"[[other]]\n", "[table]\n", "key = \"v\"\n",
                          "[[commit]]\nstarts_with = \"a\" junk\n",
                          "[[commit]]\nstarts_with = \"unterminated\n",
                          "[[commit]]\nstarts_with = \"a\\q\"\n",
                          "[[commit]]\ncontinuation = \"x\"\n",
                          "[[commit]]\nweird = \"x\"\n", "[[commit]]\nstarts_with\n"}) {
    try {
      ParsePatternConfig(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig) << bad;
    }
  }
}

TEST(PatternConfig, BadRegexIsInvalidConfig) {
  PatternConfig c;
  c.commit.push_back({"merge", "(unclosed"});
  try {
    Heuristics h(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
  }
}

}  // namespace
}  // namespace prscrub
