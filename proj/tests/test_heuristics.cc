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

#include <random>

#include "golden.h"
#include "prscrub/error.h"
#include "prscrub/heuristics.h"
#include "prscrub/jsonl.h"
#include "prscrub/preprocess.h"
#include "test_util.h"

namespace prscrub {
namespace {

TokenList Words(std::size_t n, const std::string& stem) {
  TokenList t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(stem + std::to_string(i));
  return t;
}

std::string Text(const TokenList& t) {
  std::string s;
  for (const auto& w : t) s += (s.empty() ? "" : " ") + w;
  return s;
}

TEST(Golden, MergeCommitsRemovedByRuleOne) {
  const PrSample s = golden::MergeCommits();
  const auto [cleaned, flags] = ApplyHeuristics(s);
  EXPECT_EQ(flags.h1_removed, 2u);
  EXPECT_FALSE(flags.h1_emptied);
  EXPECT_FALSE(flags.h2);
  Thresholds lenient;
  lenient.missing_fraction_cutoff = 1.0;
  lenient.length_ratio_cutoff = 0.01;
  const auto [kept, kept_flags] = ApplyHeuristics(s, lenient);
  ASSERT_TRUE(kept.has_value());
  EXPECT_EQ(kept->input_sequence,
            (std::vector<std::string>{s.input_sequence[0], s.input_sequence[2]}));
  EXPECT_EQ(kept->input_tokens, Tokenize(JoinInputSequence(kept->input_sequence)));
  EXPECT_EQ(kept_flags.h1_removed, 2u);
}

TEST(Golden, IssueOnlyDescriptionIsTrivial) {
  const auto [cleaned, flags] = ApplyHeuristics(golden::IssueOnlyDescription());
  EXPECT_TRUE(flags.h2);
  EXPECT_EQ(flags.h1_removed, 0u);
  EXPECT_TRUE(flags.removed);
  EXPECT_FALSE(cleaned.has_value());
}

TEST(Golden, OffTopicDescriptionIsIrrelevant) {
  const PrSample s = golden::OffTopicDescription();
  EXPECT_EQ(s.reference_tokens, (TokenList{"awful", "formatting", "problem", "i", "know"}));
  EXPECT_DOUBLE_EQ(MissingFraction(s.reference_tokens, s.input_tokens), 1.0);
  const auto [cleaned, flags] = ApplyHeuristics(s);
  EXPECT_TRUE(flags.h3);
  EXPECT_FALSE(flags.h2);
  EXPECT_EQ(flags.h1_removed, 1u);  // the "Merge branch 'master' of ..." line
}

TEST(Golden, ShortInputIsInadequate) {
  const PrSample s = golden::ShortInput();
  EXPECT_EQ(s.input_tokens, (TokenList{"liblasercut", "first", "draft"}));
  EXPECT_EQ(s.reference_tokens.size(), 33u);
  EXPECT_TRUE(IsInadequate(s.input_tokens, s.reference_tokens));
  const auto [cleaned, flags] = ApplyHeuristics(s);
  EXPECT_TRUE(flags.h4);
  EXPECT_FALSE(cleaned.has_value());
}

TEST(MissingFraction, Basics) {
  const TokenList ref = {"a", "b", "c", "d", "e"};
  EXPECT_DOUBLE_EQ(MissingFraction(ref, ref), 0.0);
  EXPECT_DOUBLE_EQ(MissingFraction(ref, {"a"}), 0.8);
  EXPECT_DOUBLE_EQ(MissingFraction({"a", "a", "b"}, {"a"}), 0.5);
  EXPECT_DOUBLE_EQ(MissingFraction({"a", "a", "b"}, {"b"}, MissingMode::kMultiset), 2.0 / 3.0);
  try {
    MissingFraction({}, {"a"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyReference);
  }
}

TEST(Boundaries, MissingFractionStrictlyAboveCutoff) {
  // 5 distinct reference words, 4 absent: 0.8 is not "over 80%".
  const PrSample at = MakeSample("x#1", {"alpha one two three four five six seven"},
                                 "alpha bravo charlie delta echo");
  EXPECT_FALSE(ApplyHeuristics(at).second.h3);
  const PrSample over = MakeSample("x#2", {"zulu one two three four five six seven"},
                                   "alpha bravo charlie delta echo");
  EXPECT_TRUE(ApplyHeuristics(over).second.h3);
}

TEST(Boundaries, HalfOrFewerWords) {
  const TokenList ref = Words(20, "r");
  EXPECT_TRUE(IsInadequate(Words(10, "i"), ref));
  EXPECT_FALSE(IsInadequate(Words(11, "i"), ref));
  EXPECT_TRUE(IsInadequate({}, ref));
  // Odd reference: 7 words, half is 3.5.
  EXPECT_TRUE(IsInadequate(Words(3, "i"), Words(7, "r")));
  EXPECT_FALSE(IsInadequate(Words(4, "i"), Words(7, "r")));
}

TEST(ApplyHeuristics, AllTrivialCommitsEmptiesInput) {
  const PrSample s = MakeSample("x#1", {"update changelog", "Update changelog"}, "Documents x.");
  const auto [cleaned, flags] = ApplyHeuristics(s);
  EXPECT_TRUE(flags.h1_emptied);
  EXPECT_EQ(flags.h1_removed, 2u);
  EXPECT_TRUE(flags.removed);
  EXPECT_EQ(Heuristics::PrimaryReason(flags), DropReason::kEmptyInputAfterH1);
}

TEST(ApplyHeuristics, SeveralRulesRecordedIndependently) {
  const PrSample s = MakeSample("x#1", {"alpha beta gamma"}, Text(Words(20, "w")));
  const auto [cleaned, flags] = ApplyHeuristics(s);
  EXPECT_TRUE(flags.h3);
  EXPECT_TRUE(flags.h4);
  EXPECT_TRUE(flags.removed);
  EXPECT_EQ(Heuristics::PrimaryReason(flags), DropReason::kIrrelevant);
}

TEST(ApplyHeuristics, BasisSelectsInputSeenByLengthRules) {
  // Post-H1 the input is 2 words against a 4-word reference (H4 fires);
  // pre-H1 the merge line adds enough words to pass.
  const PrSample s = MakeSample(
      "x#1", {"parser cache", "Merge branch 'master' into parser-cache-work-today"},
      "parser cache parser cache");
  Thresholds after;
  EXPECT_TRUE(ApplyHeuristics(s, after).second.h4);
  Thresholds before;
  before.basis = LengthBasis::kBeforeH1;
  EXPECT_FALSE(ApplyHeuristics(s, before).second.h4);
}

TEST(Thresholds, Validate) {
  Thresholds t;
  EXPECT_NO_THROW(t.Validate());
  for (double bad : {0.0, -0.1, 1.01}) {
    t.missing_fraction_cutoff = bad;
    EXPECT_THROW(t.Validate(), Error);
    t.missing_fraction_cutoff = 0.8;
    t.length_ratio_cutoff = bad;
    EXPECT_THROW(t.Validate(), Error);
    t.length_ratio_cutoff = 0.5;
  }
  t.missing_fraction_cutoff = 1.0;
  t.length_ratio_cutoff = 1.0;
  EXPECT_NO_THROW(t.Validate());
}

std::vector<PrSample> FixtureSamples() {
  return Preprocess(ReadJsonl(testing::FixturePath("corpus200.jsonl"))).samples;
}

TEST(Fixture, FlagsMatchConstruction) {
  const Json expected =
      ReadJsonFile(testing::FixturePath("corpus200.expected.json")).at("flags");
  const auto samples = FixtureSamples();
  ASSERT_EQ(samples.size(), expected.size());
  for (const auto& s : samples) {
    const auto [cleaned, f] = ApplyHeuristics(s);
    const Json& e = expected.at(s.id);
    EXPECT_EQ(f.h1_removed, e.at("h1_removed").get<std::size_t>()) << s.id;
    EXPECT_EQ(f.h1_emptied, e.at("h1_emptied").get<bool>()) << s.id;
    EXPECT_EQ(f.h2, e.at("h2").get<bool>()) << s.id;
    EXPECT_EQ(f.h3, e.at("h3").get<bool>()) << s.id;
    EXPECT_EQ(f.h4, e.at("h4").get<bool>()) << s.id;
    EXPECT_EQ(f.removed, e.at("removed").get<bool>()) << s.id;
    EXPECT_EQ(cleaned.has_value(), !f.removed);
  }
}

TEST(Properties, KeptSamplesSatisfyAllRules) {
  const Heuristics h;
  for (const auto& s : FixtureSamples()) {
    const auto [cleaned, flags] = h.Apply(s);
    EXPECT_EQ(flags.removed, flags.h1_emptied || flags.h2 || flags.h3 || flags.h4);
    EXPECT_LE(flags.h1_removed, s.input_sequence.size());
    if (!cleaned) continue;
    for (const auto& m : cleaned->input_sequence) EXPECT_FALSE(h.IsTrivialCommit(m));
    EXPECT_FALSE(h.IsTrivialDescription(cleaned->reference_description));
    EXPECT_LE(MissingFraction(cleaned->reference_tokens, cleaned->input_tokens), 0.80);
    EXPECT_GT(static_cast<double>(cleaned->input_tokens.size()),
              0.5 * static_cast<double>(cleaned->reference_tokens.size()));
  }
}

TEST(Properties, IdempotentOnKeptOutput) {
  const Heuristics h;
  for (const auto& s : FixtureSamples()) {
    const auto first = h.Apply(s);
    if (!first.first) continue;
    const auto second = h.Apply(*first.first);
    ASSERT_TRUE(second.first.has_value()) << s.id;
    EXPECT_EQ(*second.first, *first.first);
    EXPECT_EQ(second.second, HeuristicFlags{});
  }
}

TEST(Properties, OrderIndependent) {
  const Heuristics h;
  auto samples = FixtureSamples();
  std::map<std::string, HeuristicFlags> forward;
  for (const auto& s : samples) forward[s.id] = h.Apply(s).second;
  std::mt19937_64 rng(3);
  std::shuffle(samples.begin(), samples.end(), rng);
  for (const auto& s : samples) EXPECT_EQ(h.Apply(s).second, forward[s.id]);
}

TEST(Properties, MonotoneInThresholds) {
  const auto samples = FixtureSamples();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int iter = 0; iter < 40; ++iter) {
    Thresholds base;
    base.missing_fraction_cutoff = u(rng);
    base.length_ratio_cutoff = u(rng);
    Thresholds looser = base;
    looser.missing_fraction_cutoff = std::min(1.0, base.missing_fraction_cutoff + u(rng) / 4);
    looser.length_ratio_cutoff = std::max(0.01, base.length_ratio_cutoff - u(rng) / 4);
    const Heuristics hb(DefaultPatternConfig(), base), hl(DefaultPatternConfig(), looser);
    for (const auto& s : samples) {
      if (hb.Apply(s).first) {
        EXPECT_TRUE(hl.Apply(s).first.has_value()) << s.id;
      }
    }
  }
}

}  // namespace
}  // namespace prscrub
