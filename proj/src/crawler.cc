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

#include "prscrub/crawler.h"

#include <algorithm>
#include <thread>

#include "httplib.h"
#include "prscrub/error.h"

namespace prscrub {

namespace {

constexpr const char* kPullRequestsQuery = R"gql(
query($owner: String!, $name: String!, $first: Int!, $after: String, $commits: Int!) {
  repository(owner: $owner, name: $name) {
    pullRequests(first: $first, after: $after, orderBy: {field: CREATED_AT, direction: ASC}) {
      pageInfo { hasNextPage endCursor }
      nodes {
        number
        title
        body
        url
        state
        author { __typename }
        commits(first: $commits) {
          totalCount
          pageInfo { hasNextPage endCursor }
          nodes { commit { message } }
        }
      }
    }
  }
})gql";

constexpr const char* kCommitsQuery = R"gql(
query($owner: String!, $name: String!, $number: Int!, $first: Int!, $after: String) {
  repository(owner: $owner, name: $name) {
    pullRequest(number: $number) {
      commits(first: $first, after: $after) {
        pageInfo { hasNextPage endCursor }
        nodes { commit { message } }
      }
    }
  }
})gql";

class HttplibTransport : public GraphQlTransport {
 public:
  HttplibTransport(const std::string& endpoint, const std::string& token) {
    // Split scheme://host[:port] from the path.
    const auto scheme_end = endpoint.find("://");
    const auto path_start = endpoint.find(
        '/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    base_ = endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : endpoint.substr(path_start);
    client_ = std::make_unique<httplib::Client>(base_);
    client_->set_connection_timeout(10);
    client_->set_read_timeout(60);
    headers_ = {{"Authorization", "bearer " + token},
                {"User-Agent", "prscrub-crawler"}};
  }

  HttpResponse Post(const std::string& json_body) override {
    HttpResponse out;
    auto res = client_->Post(path_, headers_, json_body, "application/json");
    if (!res) return out;
    out.status = res->status;
    out.body = res->body;
    for (const auto& [k, v] : res->headers) {
      std::string key = k;
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      out.headers[key] = v;
    }
    return out;
  }

 private:
  std::string base_;
  std::string path_;
  httplib::Headers headers_;
  std::unique_ptr<httplib::Client> client_;
};

std::optional<std::int64_t> HeaderInt(const HttpResponse& r, const char* name) {
  const auto it = r.headers.find(name);
  if (it == r.headers.end()) return std::nullopt;
  try {
    return std::stoll(it->second);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string StringOrEmpty(const Json& j, const char* key) {
  const auto it = j.find(key);
  return it != j.end() && it->is_string() ? it->get<std::string>() : "";
}

std::vector<std::string> CommitMessages(const Json& connection) {
  std::vector<std::string> out;
  for (const auto& node : connection.at("nodes")) {
    out.push_back(StringOrEmpty(node.at("commit"), "message"));
  }
  return out;
}

}  // namespace

void CrawlConfig::Validate() const {
  if (page_size < 1 || page_size > 100) {
    throw Error(ErrorCode::kInvalidParams, "page_size must be in [1, 100]");
  }
  if (commit_page_size < 1 || commit_page_size > 100) {
    throw Error(ErrorCode::kInvalidParams, "commit_page_size must be in [1, 100]");
  }
  if (commit_fetch_cap < 21) {
    throw Error(ErrorCode::kInvalidParams, "commit_fetch_cap must be >= 21");
  }
  if (max_retries < 0) {
    throw Error(ErrorCode::kInvalidParams, "max_retries must be >= 0");
  }
}

std::unique_ptr<GraphQlTransport> MakeHttpTransport(const std::string& endpoint,
                                                    const std::string& token) {
  return std::make_unique<HttplibTransport>(endpoint, token);
}

Crawler::Crawler(CrawlConfig config, std::unique_ptr<GraphQlTransport> transport,
                 Sleeper sleep, EpochClock clock)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      sleep_(std::move(sleep)),
      clock_(std::move(clock)) {
  config_.Validate();
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (!clock_) {
    clock_ = [] {
      return std::chrono::duration_cast<std::chrono::seconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
}

void Crawler::HonorRateLimit(const HttpResponse& response, bool exhausted_only) {
  if (auto retry_after = HeaderInt(response, "retry-after")) {
    sleep_(std::chrono::seconds(std::max<std::int64_t>(0, *retry_after)));
    return;
  }
  const auto remaining = HeaderInt(response, "x-ratelimit-remaining");
  const auto reset = HeaderInt(response, "x-ratelimit-reset");
  if (remaining && *remaining == 0 && reset) {
    const std::int64_t wait = std::max<std::int64_t>(0, *reset - clock_()) + 1;
    sleep_(std::chrono::seconds(wait));
    return;
  }
  if (!exhausted_only) sleep_(config_.initial_backoff);
}

Json Crawler::Execute(const OrderedJson& request) {
  const std::string body = request.dump();
  for (int attempt = 0;; ++attempt) {
    const HttpResponse res = transport_->Post(body);
    ++requests_sent_;
    const bool out_of_retries = attempt >= config_.max_retries;
    const std::chrono::milliseconds backoff = std::min<std::chrono::milliseconds>(
        config_.max_backoff, config_.initial_backoff * (1LL << std::min(attempt, 20)));

    if (res.status == 0 || res.status >= 500) {
      if (out_of_retries) {
        throw Error(ErrorCode::kTransientError,
                    "request failed after " + std::to_string(attempt + 1) +
                        " attempts (last status " + std::to_string(res.status) + ")");
      }
      sleep_(backoff);
      continue;
    }
    if (res.status == 401) {
      throw Error(ErrorCode::kAuthError, "endpoint rejected the token (401)");
    }
    if (res.status == 403 || res.status == 429) {
      if (out_of_retries) {
        throw Error(ErrorCode::kRateLimited,
                    "still rate limited after " + std::to_string(attempt + 1) +
                        " attempts");
      }
      HonorRateLimit(res, /*exhausted_only=*/false);
      continue;
    }
    if (res.status != 200) {
      throw Error(ErrorCode::kIoError,
                  "unexpected HTTP status " + std::to_string(res.status));
    }

    Json reply;
    try {
      reply = Json::parse(res.body);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kParseError, std::string("GraphQL reply: ") + e.what());
    }
    if (const auto errors = reply.find("errors");
        errors != reply.end() && errors->is_array() && !errors->empty()) {
      bool rate_limited = false;
      for (const auto& e : *errors) {
        const std::string type = StringOrEmpty(e, "type");
        if (type == "NOT_FOUND") {
          throw Error(ErrorCode::kNotFound, StringOrEmpty(e, "message"));
        }
        rate_limited |= type == "RATE_LIMITED";
      }
      if (!rate_limited) {
        throw Error(ErrorCode::kParseError,
                    "GraphQL error: " + StringOrEmpty((*errors)[0], "message"));
      }
      if (out_of_retries) {
        throw Error(ErrorCode::kRateLimited, "GraphQL rate limit persisted");
      }
      HonorRateLimit(res, /*exhausted_only=*/false);
      continue;
    }
    HonorRateLimit(res, /*exhausted_only=*/true);
    return reply.at("data");
  }
}

std::vector<std::string> Crawler::FetchRemainingCommits(
    const std::string& owner, const std::string& name, std::int64_t number,
    std::string cursor, std::size_t wanted, bool& more) {
  std::vector<std::string> out;
  more = true;
  while (more && out.size() < wanted) {
    OrderedJson req;
    req["query"] = kCommitsQuery;
    req["variables"] = {
        {"owner", owner},
        {"name", name},
        {"number", number},
        {"first", std::min<std::size_t>(wanted - out.size(),
                                        static_cast<std::size_t>(config_.commit_page_size))},
        {"after", cursor}};
    const Json data = Execute(req);
    const Json& pr = data.at("repository").at("pullRequest");
    if (pr.is_null()) throw Error(ErrorCode::kNotFound, "PR vanished mid-crawl");
    const Json& commits = pr.at("commits");
    for (auto& m : CommitMessages(commits)) out.push_back(std::move(m));
    more = commits.at("pageInfo").at("hasNextPage").get<bool>();
    cursor = StringOrEmpty(commits.at("pageInfo"), "endCursor");
  }
  return out;
}

std::size_t Crawler::CrawlRepo(const std::string& repo,
                               const std::function<void(RawPullRequest)>& sink) {
  const auto slash = repo.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == repo.size()) {
    throw Error(ErrorCode::kInvalidParams, "repo must be owner/name: " + repo);
  }
  const std::string owner = repo.substr(0, slash);
  const std::string name = repo.substr(slash + 1);
  const auto cap = static_cast<std::size_t>(config_.commit_fetch_cap);

  std::size_t emitted = 0;
  Json cursor = nullptr;
  bool has_next = true;
  try {
    while (has_next) {
      if (config_.max_prs_per_repo && emitted >= *config_.max_prs_per_repo) break;
      OrderedJson req;
      req["query"] = kPullRequestsQuery;
      req["variables"] = {
          {"owner", owner},
          {"name", name},
          {"first", config_.page_size},
          {"after", cursor},
          {"commits", std::min(config_.commit_fetch_cap, config_.commit_page_size)}};
      const Json data = Execute(req);
      const Json& repository = data.at("repository");
      if (repository.is_null()) throw Error(ErrorCode::kNotFound, "repository " + repo);
      const Json& prs = repository.at("pullRequests");

      for (const auto& node : prs.at("nodes")) {
        if (config_.max_prs_per_repo && emitted >= *config_.max_prs_per_repo) break;
        RawPullRequest pr;
        pr.repo = repo;
        pr.number = node.at("number").get<std::int64_t>();
        pr.title = StringOrEmpty(node, "title");
        pr.body = StringOrEmpty(node, "body");
        pr.url = StringOrEmpty(node, "url");
        pr.state = StringOrEmpty(node, "state");
        const Json& author = node.value("author", Json(nullptr));
        pr.author_is_bot =
            author.is_object() && StringOrEmpty(author, "__typename") == "Bot";

        const Json& commits = node.at("commits");
        pr.commits = CommitMessages(commits);
        bool more = commits.at("pageInfo").at("hasNextPage").get<bool>();
        if (more && pr.commits.size() < cap) {
          auto rest = FetchRemainingCommits(
              owner, name, pr.number,
              StringOrEmpty(commits.at("pageInfo"), "endCursor"),
              cap - pr.commits.size(), more);
          for (auto& m : rest) pr.commits.push_back(std::move(m));
        }
        if (pr.commits.size() > cap) pr.commits.resize(cap);
        const auto total = commits.value("totalCount", Json(nullptr));
        pr.commits_truncated =
            more || (total.is_number_integer() &&
                     total.get<std::size_t>() > pr.commits.size());
        sink(std::move(pr));
        ++emitted;
      }
      has_next = prs.at("pageInfo").at("hasNextPage").get<bool>();
      cursor = prs.at("pageInfo").value("endCursor", Json(nullptr));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, "unexpected GraphQL shape: " + std::string(e.what()));
  }
  return emitted;
}

}  // namespace prscrub
