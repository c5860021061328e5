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

#ifndef PRSCRUB_CRAWLER_H_
#define PRSCRUB_CRAWLER_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prscrub/jsonl.h"
#include "prscrub/model.h"

namespace prscrub {

struct CrawlConfig {
  std::vector<std::string> repos;
  std::string auth_token;
  int page_size = 50;  // [1, 100]
  std::optional<std::size_t> max_prs_per_repo;
  // Must exceed the 20-commit preprocessing cutoff so truncation certifies it.
  int commit_fetch_cap = 25;
  int commit_page_size = 100;  // [1, 100]
  std::string endpoint = "https://api.github.com/graphql";
  int max_retries = 5;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::milliseconds max_backoff{60000};

  // Throws InvalidParams.
  void Validate() const;
};

struct HttpResponse {
  int status = 0;  // 0 when the request never completed
  std::string body;
  std::map<std::string, std::string> headers;  // lowercase names
};

class GraphQlTransport {
 public:
  virtual ~GraphQlTransport() = default;
  virtual HttpResponse Post(const std::string& json_body) = 0;
};

// cpp-httplib client for http:// and https:// endpoints.
std::unique_ptr<GraphQlTransport> MakeHttpTransport(const std::string& endpoint,
                                                    const std::string& token);

using Sleeper = std::function<void(std::chrono::milliseconds)>;
using EpochClock = std::function<std::int64_t()>;  // seconds since epoch

// Pulls every pull request of a repository through the GraphQL API, oldest
// first, one request in flight at a time.
class Crawler {
 public:
  Crawler(CrawlConfig config, std::unique_ptr<GraphQlTransport> transport,
          Sleeper sleep = {}, EpochClock clock = {});

  // Invokes `sink` once per PR in API order and returns the number emitted.
  std::size_t CrawlRepo(const std::string& repo,
                        const std::function<void(RawPullRequest)>& sink);

  std::size_t requests_sent() const { return requests_sent_; }

 private:
  Json Execute(const OrderedJson& request);
  void HonorRateLimit(const HttpResponse& response, bool exhausted_only);
  std::vector<std::string> FetchRemainingCommits(const std::string& owner,
                                                 const std::string& name,
                                                 std::int64_t number,
                                                 std::string cursor,
                                                 std::size_t wanted,
                                                 bool& more);

  CrawlConfig config_;
  std::unique_ptr<GraphQlTransport> transport_;
  Sleeper sleep_;
  EpochClock clock_;
  std::size_t requests_sent_ = 0;
};

}  // namespace prscrub

#endif  // PRSCRUB_CRAWLER_H_
