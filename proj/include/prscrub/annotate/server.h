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

#ifndef PRSCRUB_ANNOTATE_SERVER_H_
#define PRSCRUB_ANNOTATE_SERVER_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "prscrub/annotate/session.h"
#include "prscrub/annotate/store.h"

namespace httplib {
class Server;
}

namespace prscrub::annotate {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  // When set, every /api request must carry X-Session-Token with this value.
  std::optional<std::string> session_token;
  // Optional directory of static UI files mounted at /.
  std::optional<std::filesystem::path> ui_dir;
};

// HTTP front end for one rating session.
//
//   GET  /api/session             metadata, criteria and scale labels
//   GET  /api/items?rater=ID      items the rater has not finished (blinded)
//   POST /api/stage1/rating       RatingRecord without timestamp
//   POST /api/stage2/label        NoiseLabel without timestamp
//   GET  /api/progress?rater=ID   per-rater completion
//
// Errors are {"error": code, "detail": text} with a 4xx/5xx status. The
// sealed arm key is dropped at construction and never reaches a handler.
class AnnotationServer {
 public:
  // Throws InvalidSession for an empty session and CorruptStore when the
  // store fails verification.
  AnnotationServer(Session session, const std::filesystem::path& store_path,
                   ServerOptions options);
  ~AnnotationServer();

  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  // Binds (throws PortInUse) and serves on a background thread.
  void Start();
  // Binds and serves on the calling thread until Stop().
  void Run();
  void Stop();

  int port() const { return bound_port_; }

 private:
  void Bind();
  void InstallRoutes();

  Session session_;
  JudgmentStore store_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> http_;
  std::thread worker_;
  int bound_port_ = 0;
};

}  // namespace prscrub::annotate

#endif  // PRSCRUB_ANNOTATE_SERVER_H_
