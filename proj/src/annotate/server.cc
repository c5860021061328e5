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

#include "prscrub/annotate/server.h"

#include <set>
#include <unordered_map>

#include "httplib.h"
#include "prscrub/error.h"

namespace prscrub::annotate {

namespace {

void Reply(httplib::Response& res, int status, const OrderedJson& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void ReplyError(httplib::Response& res, int status, std::string_view code,
                const std::string& detail) {
  OrderedJson body;
  body["error"] = code;
  body["detail"] = detail;
  Reply(res, status, body);
}

// Reads a required integer score field; nullopt when absent or not an int.
std::optional<int> IntField(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) return std::nullopt;
  return it->get<int>();
}

std::optional<std::string> StringField(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

std::string Stage2Key(const std::string& id, const std::string& heuristic) {
  return id + '\x1f' + heuristic;
}

}  // namespace

AnnotationServer::AnnotationServer(Session session,
                                   const std::filesystem::path& store_path,
                                   ServerOptions options)
    : session_(std::move(session)),
      store_(JudgmentStore::Open(store_path, /*strict=*/true)),
      options_(std::move(options)),
      http_(std::make_unique<httplib::Server>()) {
  session_.sealed_key.reset();
  if (session_.size() == 0) {
    throw Error(ErrorCode::kInvalidSession, "session has no items");
  }
  InstallRoutes();
}

AnnotationServer::~AnnotationServer() { Stop(); }

void AnnotationServer::Bind() {
  if (options_.port == 0) {
    bound_port_ = http_->bind_to_any_port(options_.host);
  } else {
    bound_port_ = http_->bind_to_port(options_.host, options_.port)
                      ? options_.port
                      : -1;
  }
  if (bound_port_ < 0) {
    throw Error(ErrorCode::kPortInUse, options_.host + ":" +
                                           std::to_string(options_.port));
  }
}

void AnnotationServer::Start() {
  Bind();
  worker_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
}

void AnnotationServer::Run() {
  Bind();
  http_->listen_after_bind();
}

void AnnotationServer::Stop() {
  if (http_) http_->stop();
  if (worker_.joinable()) worker_.join();
}

void AnnotationServer::InstallRoutes() {
  auto& http = *http_;

  // httplib defaults to SO_REUSEPORT, which would let a second server share
  // the port silently instead of failing with PortInUse.
  http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  if (options_.ui_dir) http.set_mount_point("/", options_.ui_dir->string());

  http.set_pre_routing_handler(
      [this](const httplib::Request& req, httplib::Response& res) {
        if (!options_.session_token || !req.path.starts_with("/api/")) {
          return httplib::Server::HandlerResponse::Unhandled;
        }
        if (req.get_header_value("X-Session-Token") != *options_.session_token) {
          ReplyError(res, 401, "Unauthorized", "missing or wrong session token");
          return httplib::Server::HandlerResponse::Handled;
        }
        return httplib::Server::HandlerResponse::Unhandled;
      });

  http.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
          std::rethrow_exception(ep);
        } catch (const Error& e) {
          ReplyError(res, 500, ErrorCodeName(e.code()), e.detail());
        } catch (const std::exception& e) {
          ReplyError(res, 500, "Internal", e.what());
        }
      });

  const bool stage1 = session_.kind == SessionKind::kStage1;

  http.Get("/api/session", [this, stage1](const httplib::Request&,
                                          httplib::Response& res) {
    OrderedJson body;
    body["kind"] = stage1 ? "stage1" : "stage2";
    body["reconciliation"] = session_.reconciliation;
    body["item_count"] = session_.size();
    OrderedJson criteria = OrderedJson::array();
    for (Criterion c : kCriteria) criteria.push_back(CriterionName(c));
    body["criteria"] = criteria;
    OrderedJson scale = OrderedJson::object();
    for (std::size_t i = 0; i < kScaleLabels.size(); ++i) {
      scale[std::to_string(i + 1)] = kScaleLabels[i];
    }
    body["scale"] = scale;
    body["arms"] = stage1 ? OrderedJson::array({"A", "B"}) : OrderedJson::array();
    body["verdicts"] = stage1 ? OrderedJson::array() : OrderedJson::array({"TP", "FP"});
    OrderedJson rules = OrderedJson::object();
    for (const auto& [h, text] : session_.rules) rules[h] = text;
    body["rules"] = rules;
    Reply(res, 200, body);
  });

  http.Get("/api/items", [this, stage1](const httplib::Request& req,
                                        httplib::Response& res) {
    const std::string rater = req.get_param_value("rater");
    if (rater.empty()) {
      ReplyError(res, 400, "MissingRater", "query parameter 'rater' is required");
      return;
    }
    OrderedJson items = OrderedJson::array();
    if (stage1) {
      std::set<std::pair<std::string, std::string>> done;
      for (const auto& r : store_.ratings()) {
        if (r.rater_id == rater) done.emplace(r.sample_id, r.arm);
      }
      for (const auto& it : session_.stage1_items) {
        OrderedJson pending = OrderedJson::array();
        for (const char* arm : {"A", "B"}) {
          if (!done.count({it.sample_id, arm})) pending.push_back(arm);
        }
        if (pending.empty()) continue;
        OrderedJson o;
        o["sample_id"] = it.sample_id;
        o["input_sequence"] = it.input_sequence;
        o["ground_truth"] = it.ground_truth;
        o["descriptions"] = {{"A", it.arm_a}, {"B", it.arm_b}};
        o["pending_arms"] = pending;
        items.push_back(std::move(o));
      }
    } else {
      std::set<std::string> done;
      for (const auto& l : store_.labels()) {
        if (l.rater_id == rater) done.insert(Stage2Key(l.sample_id, l.heuristic));
      }
      for (const auto& it : session_.stage2_items) {
        if (done.count(Stage2Key(it.sample_id, it.heuristic))) continue;
        OrderedJson o;
        o["sample_id"] = it.sample_id;
        o["heuristic"] = it.heuristic;
        const auto rule = session_.rules.find(it.heuristic);
        o["rule_text"] = rule == session_.rules.end() ? "" : rule->second;
        o["input_sequence"] = it.input_sequence;
        o["ground_truth"] = it.ground_truth;
        o["removed_commits"] = it.removed_commits;
        items.push_back(std::move(o));
      }
    }
    OrderedJson body;
    body["rater_id"] = rater;
    body["items"] = std::move(items);
    Reply(res, 200, body);
  });

  http.Get("/api/progress", [this, stage1](const httplib::Request& req,
                                           httplib::Response& res) {
    const std::string rater = req.get_param_value("rater");
    if (rater.empty()) {
      ReplyError(res, 400, "MissingRater", "query parameter 'rater' is required");
      return;
    }
    std::size_t judgments = 0;
    std::size_t completed = 0;
    if (stage1) {
      std::unordered_map<std::string, int> arms;
      for (const auto& r : store_.ratings()) {
        if (r.rater_id != rater) continue;
        ++judgments;
        if (++arms[r.sample_id] == 2) ++completed;
      }
    } else {
      for (const auto& l : store_.labels()) {
        if (l.rater_id != rater) continue;
        ++judgments;
        ++completed;
      }
    }
    OrderedJson body;
    body["rater_id"] = rater;
    body["completed"] = completed;
    body["total"] = session_.size();
    body["judgments"] = judgments;
    body["fraction"] = static_cast<double>(completed) /
                       static_cast<double>(session_.size());
    Reply(res, 200, body);
  });

  std::unordered_map<std::string, std::size_t> stage1_index;
  for (std::size_t i = 0; i < session_.stage1_items.size(); ++i) {
    stage1_index.emplace(session_.stage1_items[i].sample_id, i);
  }
  std::unordered_map<std::string, std::size_t> stage2_index;
  for (std::size_t i = 0; i < session_.stage2_items.size(); ++i) {
    const auto& it = session_.stage2_items[i];
    stage2_index.emplace(Stage2Key(it.sample_id, it.heuristic), i);
  }

  const auto parse_body = [](const httplib::Request& req, httplib::Response& res,
                             Json& out) {
    try {
      out = Json::parse(req.body);
    } catch (const Json::exception& e) {
      ReplyError(res, 400, "ParseError", e.what());
      return false;
    }
    if (!out.is_object()) {
      ReplyError(res, 400, "ParseError", "body must be a JSON object");
      return false;
    }
    return true;
  };

  const auto reply_append = [](httplib::Response& res, AppendResult result) {
    switch (result) {
      case AppendResult::kStored:
        Reply(res, 201, {{"status", "stored"}});
        break;
      case AppendResult::kDuplicate:
        Reply(res, 200, {{"status", "duplicate"}});
        break;
      case AppendResult::kConflict:
        ReplyError(res, 409, "Conflict",
                   "a different judgment is already stored for this key");
        break;
    }
  };

  http.Post("/api/stage1/rating", [this, stage1, stage1_index, parse_body,
                                   reply_append](const httplib::Request& req,
                                                 httplib::Response& res) {
    if (!stage1) {
      ReplyError(res, 409, "WrongStage", "this is a stage-2 session");
      return;
    }
    Json body;
    if (!parse_body(req, res, body)) return;
    const auto sample_id = StringField(body, "sample_id");
    const auto rater_id = StringField(body, "rater_id");
    const auto arm = StringField(body, "arm");
    if (!sample_id || !rater_id || rater_id->empty() || !arm) {
      ReplyError(res, 422, "InvalidRecord", "sample_id, rater_id and arm are required");
      return;
    }
    if (*arm != "A" && *arm != "B") {
      ReplyError(res, 422, "InvalidRecord", "arm must be A or B");
      return;
    }
    if (!stage1_index.count(*sample_id)) {
      ReplyError(res, 404, "NotFound", "no item " + *sample_id);
      return;
    }
    RatingRecord record;
    record.sample_id = *sample_id;
    record.rater_id = *rater_id;
    record.arm = *arm;
    for (Criterion c : kCriteria) {
      const std::string name(CriterionName(c));
      const auto score = IntField(body, name.c_str());
      if (!score || *score < 1 || *score > 4) {
        ReplyError(res, 422, "InvalidScore", name + " must be an integer in [1, 4]");
        return;
      }
      switch (c) {
        case Criterion::kRelevance: record.relevance = *score; break;
        case Criterion::kDescriptiveness: record.descriptiveness = *score; break;
        case Criterion::kClarity: record.clarity = *score; break;
      }
    }
    reply_append(res, store_.AppendRating(std::move(record)));
  });

  http.Post("/api/stage2/label", [this, stage1, stage2_index, parse_body,
                                  reply_append](const httplib::Request& req,
                                                httplib::Response& res) {
    if (stage1) {
      ReplyError(res, 409, "WrongStage", "this is a stage-1 session");
      return;
    }
    Json body;
    if (!parse_body(req, res, body)) return;
    const auto sample_id = StringField(body, "sample_id");
    const auto heuristic = StringField(body, "heuristic");
    const auto rater_id = StringField(body, "rater_id");
    const auto verdict = StringField(body, "verdict");
    if (!sample_id || !heuristic || !rater_id || rater_id->empty() || !verdict) {
      ReplyError(res, 422, "InvalidRecord",
                 "sample_id, heuristic, rater_id and verdict are required");
      return;
    }
    if (*verdict != "TP" && *verdict != "FP") {
      ReplyError(res, 422, "InvalidVerdict", "verdict must be TP or FP");
      return;
    }
    if (!stage2_index.count(Stage2Key(*sample_id, *heuristic))) {
      ReplyError(res, 404, "NotFound", "no item " + *sample_id + " for " + *heuristic);
      return;
    }
    NoiseLabel label;
    label.sample_id = *sample_id;
    label.heuristic = *heuristic;
    label.rater_id = *rater_id;
    label.verdict = ParseVerdict(*verdict);
    reply_append(res, store_.AppendLabel(std::move(label)));
  });
}

}  // namespace prscrub::annotate
