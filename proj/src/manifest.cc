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

#include "prscrub/manifest.h"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace prscrub {

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch()) %
                  1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms.count()));
  return out;
}

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)),
      argv_(std::move(argv)),
      started_at_(UtcTimestamp()) {}

void RunManifest::AddInput(const std::filesystem::path& path) {
  inputs_.emplace_back(path.string(), Sha256File(path));
}

void RunManifest::AddOutput(const std::filesystem::path& path) {
  outputs_.emplace_back(path.string(), Sha256File(path));
}

OrderedJson RunManifest::ToJson() const {
  OrderedJson j;
  j["tool"] = "prscrub";
  j["version"] = kToolVersion;
  j["command"] = command_;
  j["argv"] = argv_;
  j["config"] = config_;
  auto files = [](const auto& list) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& [path, hash] : list) {
      arr.push_back({{"path", path}, {"sha256", hash}});
    }
    return arr;
  };
  j["inputs"] = files(inputs_);
  j["outputs"] = files(outputs_);
  j["started_at"] = started_at_;
  j["finished_at"] = finished_at_;
  return j;
}

void RunManifest::Write(const std::filesystem::path& path) {
  finished_at_ = UtcTimestamp();
  WriteJsonFile(ToJson(), path);
}

std::filesystem::path ManifestPathFor(const std::filesystem::path& artifact) {
  std::filesystem::path p = artifact;
  p += ".manifest.json";
  return p;
}

Json StripTimestamps(Json manifest) {
  manifest.erase("started_at");
  manifest.erase("finished_at");
  return manifest;
}

}  // namespace prscrub
