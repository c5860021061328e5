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

#include <deque>
#include <optional>

#include "graphql_fixture.h"
#include "prscrub/crawler.h"
#include "prscrub/error.h"

namespace prscrub {
namespace {

using testing::FixturePr;
using testing::GraphQlFixture;
using namespace std::chrono_literals;

std::vector<std::string> Commits(std::size_t n, const std::string& stem = "Change ") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

CrawlConfig ConfigFor(const GraphQlFixture& fx, std::string token = "good-token") {
  CrawlConfig c;
  c.endpoint = fx.url();
  c.auth_token = std::move(token);
  c.initial_backoff = 1ms;
  c.max_backoff = 2ms;
  c.max_retries = 2;
  return c;
}

std::vector<RawPullRequest> Crawl(const CrawlConfig& cfg, const std::string& repo) {
  Crawler crawler(cfg, MakeHttpTransport(cfg.endpoint, cfg.auth_token));
  std::vector<RawPullRequest> out;
  const std::size_t n = crawler.CrawlRepo(repo, [&](RawPullRequest pr) { out.push_back(pr); });
  EXPECT_EQ(n, out.size());
  return out;
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

TEST(CrawlerHttp, EmptyRepositoryYieldsNothing) {
  GraphQlFixture fx;
  fx.AddRepo("acme/empty", {});
  EXPECT_TRUE(Crawl(ConfigFor(fx), "acme/empty").empty());
}

TEST(CrawlerHttp, FieldsAndOrderArePreserved) {
  GraphQlFixture fx;
  fx.AddRepo("acme/tool", {{1, "Add parser", "Adds a parser.", "User", "MERGED", Commits(3)},
                           {2, "Bump deps", "", "Bot", "CLOSED", Commits(1)},
                           {5, "Ghost", "Body", "", "OPEN", Commits(2)}});
  CrawlConfig cfg = ConfigFor(fx);
  cfg.page_size = 2;
  const auto prs = Crawl(cfg, "acme/tool");
  ASSERT_EQ(prs.size(), 3u);
  EXPECT_EQ(prs[0].repo, "acme/tool");
  EXPECT_EQ(prs[0].number, 1);
  EXPECT_EQ(prs[0].title, "Add parser");
  EXPECT_EQ(prs[0].body, "Adds a parser.");
  EXPECT_EQ(prs[0].state, "MERGED");
  EXPECT_EQ(prs[0].commits, Commits(3));
  EXPECT_FALSE(prs[0].author_is_bot);
  EXPECT_FALSE(prs[0].commits_truncated);
  EXPECT_EQ(prs[0].url, "https://example.com/acme/tool/pull/1");
  EXPECT_TRUE(prs[1].author_is_bot);
  EXPECT_EQ(prs[1].state, "CLOSED");
  EXPECT_FALSE(prs[2].author_is_bot);
  EXPECT_EQ(prs[2].number, 5);
}

TEST(CrawlerHttp, LongCommitListsAreCappedAndMarked) {
  GraphQlFixture fx;
  fx.AddRepo("acme/big", {{7, "Huge", "b", "User", "MERGED", Commits(30)},
                          {8, "Exact", "b", "User", "MERGED", Commits(25)}});
  const auto prs = Crawl(ConfigFor(fx), "acme/big");
  ASSERT_EQ(prs.size(), 2u);
  EXPECT_EQ(prs[0].commits.size(), 25u);
  EXPECT_TRUE(prs[0].commits_truncated);
  EXPECT_EQ(prs[0].commits.front(), "Change 0");
  EXPECT_EQ(prs[0].commits.back(), "Change 24");
  EXPECT_EQ(prs[1].commits.size(), 25u);
  EXPECT_FALSE(prs[1].commits_truncated);
}

TEST(CrawlerHttp, SmallCommitPagesFollowCursors) {
  GraphQlFixture fx;
  fx.AddRepo("acme/big", {{7, "Huge", "b", "User", "MERGED", Commits(30)},
                          {9, "Mid", "b", "User", "MERGED", Commits(22)}});
  CrawlConfig cfg = ConfigFor(fx);
  cfg.commit_page_size = 10;
  const auto prs = Crawl(cfg, "acme/big");
  ASSERT_EQ(prs.size(), 2u);
  const auto all = Commits(30);
  EXPECT_EQ(prs[0].commits, std::vector<std::string>(all.begin(), all.begin() + 25));
  EXPECT_TRUE(prs[0].commits_truncated);
  EXPECT_EQ(prs[1].commits, Commits(22));
  EXPECT_FALSE(prs[1].commits_truncated);
  // 1 list page + 2 follow-ups for each PR.
  EXPECT_EQ(fx.requests(), 5);
}

TEST(CrawlerHttp, MaxPrsStopsEarly) {
  GraphQlFixture fx;
  std::vector<FixturePr> many;
  for (long i = 1; i <= 12; ++i) many.push_back({i, "t", "b", "User", "MERGED", Commits(2)});
  fx.AddRepo("acme/many", many);
  CrawlConfig cfg = ConfigFor(fx);
  cfg.page_size = 5;
  cfg.max_prs_per_repo = 7;
  const auto prs = Crawl(cfg, "acme/many");
  ASSERT_EQ(prs.size(), 7u);
  EXPECT_EQ(prs.back().number, 7);
  EXPECT_EQ(fx.requests(), 2);
}

TEST(CrawlerHttp, DeterministicAcrossRuns) {
  GraphQlFixture fx;
  std::vector<FixturePr> many;
  for (long i = 1; i <= 9; ++i) {
    many.push_back({i, "t" + std::to_string(i), "b", i % 4 ? "User" : "Bot", "MERGED",
                    Commits(static_cast<std::size_t>(i * 3))});
  }
  fx.AddRepo("acme/many", many);
  CrawlConfig cfg = ConfigFor(fx);
  cfg.page_size = 4;
  cfg.commit_page_size = 7;
  EXPECT_EQ(Crawl(cfg, "acme/many"), Crawl(cfg, "acme/many"));
}

TEST(CrawlerHttp, BadTokenIsAuthError) {
  GraphQlFixture fx;
  fx.AddRepo("acme/tool", {});
  const CrawlConfig cfg = ConfigFor(fx, "wrong");
  EXPECT_EQ(CodeOf([&] { Crawl(cfg, "acme/tool"); }), ErrorCode::kAuthError);
  EXPECT_EQ(fx.requests(), 1);
}

TEST(CrawlerHttp, UnknownRepositoryIsNotFound) {
  GraphQlFixture fx;
  EXPECT_EQ(CodeOf([&] { Crawl(ConfigFor(fx), "acme/missing"); }), ErrorCode::kNotFound);
}

TEST(CrawlerHttp, MalformedRepoName) {
  GraphQlFixture fx;
  for (const char* bad : {"noslash", "/x", "x/"}) {
    EXPECT_EQ(CodeOf([&] { Crawl(ConfigFor(fx), bad); }), ErrorCode::kInvalidParams) << bad;
  }
}

// Replays canned responses and records what was sent.
class ScriptedTransport : public GraphQlTransport {
 public:
  explicit ScriptedTransport(std::deque<HttpResponse> script, std::vector<std::string>* sent)
      : script_(std::move(script)), sent_(sent) {}

  HttpResponse Post(const std::string& body) override {
    sent_->push_back(body);
    if (script_.empty()) return {};
    HttpResponse r = script_.front();
    script_.pop_front();
    return r;
  }

 private:
  std::deque<HttpResponse> script_;
  std::vector<std::string>* sent_;
};

HttpResponse EmptyPage() {
  return {200,
          R"({"data":{"repository":{"pullRequests":{"pageInfo":{"hasNextPage":false,)"
          R"("endCursor":null},"nodes":[]}}}})",
          {}};
}

struct ScriptRun {
  std::vector<std::string> sent;
  std::vector<std::chrono::milliseconds> sleeps;
};

std::optional<ErrorCode> RunScript(std::deque<HttpResponse> script, ScriptRun& run,
                                   int max_retries = 3, std::int64_t now = 1000) {
  CrawlConfig cfg;
  cfg.max_retries = max_retries;
  cfg.initial_backoff = 100ms;
  cfg.max_backoff = 250ms;
  Crawler crawler(cfg, std::make_unique<ScriptedTransport>(std::move(script), &run.sent),
                  [&](std::chrono::milliseconds d) { run.sleeps.push_back(d); },
                  [now] { return now; });
  try {
    crawler.CrawlRepo("o/n", [](RawPullRequest) {});
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

TEST(CrawlerRetry, ServerErrorsBackOffThenSucceed) {
  ScriptRun run;
  EXPECT_EQ(RunScript({{502, "", {}}, {0, "", {}}, EmptyPage()}, run), std::nullopt);
  EXPECT_EQ(run.sent.size(), 3u);
  EXPECT_EQ(run.sleeps, (std::vector<std::chrono::milliseconds>{100ms, 200ms}));
  EXPECT_EQ(run.sent[0], run.sent[2]);
}

TEST(CrawlerRetry, PersistentServerErrorsAreTransient) {
  ScriptRun run;
  EXPECT_EQ(RunScript({{500, "", {}}, {503, "", {}}, {500, "", {}}, {500, "", {}}}, run),
            ErrorCode::kTransientError);
  EXPECT_EQ(run.sent.size(), 4u);
  EXPECT_EQ(run.sleeps, (std::vector<std::chrono::milliseconds>{100ms, 200ms, 250ms}));
}

TEST(CrawlerRetry, RetryAfterIsHonored) {
  ScriptRun run;
  EXPECT_EQ(RunScript({{429, "", {{"retry-after", "7"}}}, EmptyPage()}, run), std::nullopt);
  EXPECT_EQ(run.sleeps, (std::vector<std::chrono::milliseconds>{7000ms}));
}

TEST(CrawlerRetry, ExhaustedQuotaWaitsForReset) {
  ScriptRun run;
  HttpResponse limited{403, "", {{"x-ratelimit-remaining", "0"}, {"x-ratelimit-reset", "1030"}}};
  EXPECT_EQ(RunScript({limited, EmptyPage()}, run, 3, 1000), std::nullopt);
  EXPECT_EQ(run.sleeps, (std::vector<std::chrono::milliseconds>{31000ms}));
}

TEST(CrawlerRetry, SuccessfulReplyWithDrainedQuotaPausesBeforeNextCall) {
  ScriptRun run;
  HttpResponse ok = EmptyPage();
  ok.headers = {{"x-ratelimit-remaining", "0"}, {"x-ratelimit-reset", "1010"}};
  EXPECT_EQ(RunScript({ok}, run, 3, 1000), std::nullopt);
  EXPECT_EQ(run.sleeps, (std::vector<std::chrono::milliseconds>{11000ms}));
}

TEST(CrawlerRetry, RateLimitThatNeverClears) {
  ScriptRun run;
  HttpResponse limited{429, "", {{"retry-after", "1"}}};
  EXPECT_EQ(RunScript({limited, limited}, run, 1), ErrorCode::kRateLimited);
  EXPECT_EQ(run.sent.size(), 2u);
}

TEST(CrawlerRetry, GraphQlRateLimitErrorRetries) {
  ScriptRun run;
  HttpResponse limited{200, R"({"errors":[{"type":"RATE_LIMITED","message":"slow down"}]})",
                       {{"retry-after", "2"}}};
  EXPECT_EQ(RunScript({limited, EmptyPage()}, run), std::nullopt);
  EXPECT_EQ(run.sleeps, (std::vector<std::chrono::milliseconds>{2000ms}));
}

TEST(CrawlerRetry, UnexpectedStatusOrShape) {
  ScriptRun a, b, c;
  EXPECT_EQ(RunScript({{404, "", {}}}, a), ErrorCode::kIoError);
  EXPECT_EQ(RunScript({{200, "not json", {}}}, b), ErrorCode::kParseError);
  EXPECT_EQ(RunScript({{200, R"({"data":{"repository":{}}})", {}}}, c), ErrorCode::kParseError);
}

TEST(CrawlConfig, Validate) {
  CrawlConfig c;
  EXPECT_NO_THROW(c.Validate());
  for (int bad : {0, 101}) {
    CrawlConfig p = c;
    p.page_size = bad;
    EXPECT_THROW(p.Validate(), Error);
    CrawlConfig q = c;
    q.commit_page_size = bad;
    EXPECT_THROW(q.Validate(), Error);
  }
  CrawlConfig cap = c;
  cap.commit_fetch_cap = 20;
  EXPECT_THROW(cap.Validate(), Error);
  cap.commit_fetch_cap = 21;
  EXPECT_NO_THROW(cap.Validate());
  CrawlConfig r = c;
  r.max_retries = -1;
  EXPECT_THROW(r.Validate(), Error);
}

}  // namespace
}  // namespace prscrub
