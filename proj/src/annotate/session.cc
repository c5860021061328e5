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

#include "prscrub/annotate/session.h"

#include <set>
#include <unordered_map>
#include <utility>

#include "prscrub/error.h"
#include "prscrub/pipeline.h"
#include "prscrub/rng.h"

namespace prscrub::annotate {

namespace {

// Keeps the arm coin flips independent of the sampling stream.
constexpr std::uint64_t kArmStream = 0x9e3779b97f4a7c15ULL;

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidSession, what);
}

std::vector<std::string> Strings(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParseError, "expected string array");
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

ScoredDescription ScoredDescriptionFromJson(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "expected object");
  ScoredDescription d;
  d.id = j.at("id").get<std::string>();
  d.input_sequence = Strings(j.at("input_sequence"));
  d.reference = j.at("reference").get<std::string>();
  for (const char* arm : {"cleaned", "uncleaned"}) {
    const auto it = j.find(arm);
    if (it == j.end() || !it->is_string()) {
      throw Error(ErrorCode::kMissingArm,
                  d.id + " has no '" + std::string(arm) + "' description");
    }
  }
  d.cleaned = j.at("cleaned").get<std::string>();
  d.uncleaned = j.at("uncleaned").get<std::string>();
  return d;
}

std::vector<ScoredDescription> ReadScoredDescriptions(
    const std::filesystem::path& path) {
  return ReadJsonlAs<ScoredDescription>(path, ScoredDescriptionFromJson);
}

Session BuildStage1Session(const std::vector<ScoredDescription>& pairs,
                           std::size_t n, std::uint64_t seed) {
  Session session;
  session.kind = SessionKind::kStage1;
  session.seed = seed;
  session.sealed_key.emplace();
  Rng arms(seed ^ kArmStream);
  for (std::size_t i : SampleIndices(pairs.size(), n, seed)) {
    const ScoredDescription& p = pairs[i];
    const bool cleaned_is_a = arms.CoinFlip();
    session.stage1_items.push_back(
        {p.id, p.input_sequence, p.reference,
         cleaned_is_a ? p.cleaned : p.uncleaned,
         cleaned_is_a ? p.uncleaned : p.cleaned});
    (*session.sealed_key)[p.id] = cleaned_is_a ? kCleanedModel : kUncleanedModel;
  }
  return session;
}

OrderedJson FlagsToJson(const std::string& id, const HeuristicFlags& flags) {
  OrderedJson j;
  j["id"] = id;
  j["h1_removed"] = flags.h1_removed;
  j["h1_emptied"] = flags.h1_emptied;
  j["h2"] = flags.h2;
  j["h3"] = flags.h3;
  j["h4"] = flags.h4;
  j["removed"] = flags.removed;
  return j;
}

FlaggedSample FlaggedSampleFromJson(const Json& j) {
  FlaggedSample f;
  f.id = j.at("id").get<std::string>();
  f.flags.h1_removed = j.at("h1_removed").get<std::size_t>();
  f.flags.h1_emptied = j.at("h1_emptied").get<bool>();
  f.flags.h2 = j.at("h2").get<bool>();
  f.flags.h3 = j.at("h3").get<bool>();
  f.flags.h4 = j.at("h4").get<bool>();
  f.flags.removed = j.at("removed").get<bool>();
  return f;
}

std::vector<FlaggedSample> ReadFlags(const std::filesystem::path& path) {
  return ReadJsonlAs<FlaggedSample>(path, FlaggedSampleFromJson);
}

Session BuildStage2Session(const std::vector<FlaggedSample>& flags,
                           const std::vector<PrSample>& samples,
                           std::size_t per_heuristic_n, std::uint64_t seed,
                           const Heuristics& heuristics) {
  std::unordered_map<std::string, const PrSample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);

  Session session;
  session.kind = SessionKind::kStage2;
  session.seed = seed;
  session.rules = heuristics.config().rules;

  for (unsigned h = 0; h < kHeuristicNames.size(); ++h) {
    std::vector<const FlaggedSample*> stratum;
    for (const auto& f : flags) {
      if (HeuristicMask(f.flags) & (1u << h)) stratum.push_back(&f);
    }
    if (stratum.size() < per_heuristic_n) {
      throw Error(ErrorCode::kInsufficientFlagged,
                  std::string(kHeuristicNames[h]) + ": " +
                      std::to_string(stratum.size()) + " flagged, " +
                      std::to_string(per_heuristic_n) + " requested");
    }
    for (std::size_t i :
         SampleIndices(stratum.size(), per_heuristic_n, seed + h)) {
      const std::string& id = stratum[i]->id;
      const auto it = by_id.find(id);
      if (it == by_id.end()) {
        throw Error(ErrorCode::kNotFound, "flagged sample " + id +
                                              " missing from samples file");
      }
      Stage2Item item;
      item.sample_id = id;
      item.heuristic = kHeuristicNames[h];
      item.input_sequence = it->second->input_sequence;
      item.ground_truth = it->second->reference_description;
      if (h == 0) {
        for (const auto& m : item.input_sequence) {
          if (heuristics.IsTrivialCommit(m)) item.removed_commits.push_back(m);
        }
      }
      session.stage2_items.push_back(std::move(item));
    }
  }
  return session;
}

Session BuildReconciliationSession(const Session& stage2,
                                   const std::vector<Json>& worksheet) {
  if (stage2.kind != SessionKind::kStage2) {
    Invalid("reconciliation needs a stage-2 session");
  }
  std::set<std::pair<std::string, std::string>> wanted;
  for (const auto& row : worksheet) {
    wanted.emplace(row.at("sample_id").get<std::string>(),
                   row.at("heuristic").get<std::string>());
  }
  Session out = stage2;
  out.reconciliation = true;
  out.stage2_items.clear();
  for (const auto& item : stage2.stage2_items) {
    if (wanted.count({item.sample_id, item.heuristic})) {
      out.stage2_items.push_back(item);
    }
  }
  return out;
}

OrderedJson SessionToJson(const Session& session) {
  OrderedJson j;
  j["format"] = kSessionFormat;
  j["kind"] = session.kind == SessionKind::kStage1 ? "stage1" : "stage2";
  j["seed"] = session.seed;
  j["prng"] = kPrngName;
  j["reconciliation"] = session.reconciliation;
  OrderedJson items = OrderedJson::array();
  if (session.kind == SessionKind::kStage1) {
    for (const auto& it : session.stage1_items) {
      OrderedJson o;
      o["sample_id"] = it.sample_id;
      o["input_sequence"] = it.input_sequence;
      o["ground_truth"] = it.ground_truth;
      o["arm_a"] = it.arm_a;
      o["arm_b"] = it.arm_b;
      items.push_back(std::move(o));
    }
  } else {
    for (const auto& it : session.stage2_items) {
      OrderedJson o;
      o["sample_id"] = it.sample_id;
      o["heuristic"] = it.heuristic;
      o["input_sequence"] = it.input_sequence;
      o["ground_truth"] = it.ground_truth;
      o["removed_commits"] = it.removed_commits;
      items.push_back(std::move(o));
    }
  }
  j["items"] = std::move(items);
  OrderedJson rules = OrderedJson::object();
  for (const auto& [h, text] : session.rules) rules[h] = text;
  j["rules"] = std::move(rules);
  if (session.sealed_key) {
    OrderedJson key = OrderedJson::object();
    for (const auto& [id, model] : *session.sealed_key) key[id] = model;
    j["sealed_key"] = {{"arm_a_model", std::move(key)}};
  }
  return j;
}

Session SessionFromJson(const Json& j) {
  try {
    if (j.value("format", "") != kSessionFormat) Invalid("unknown session format");
    Session s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "stage1") {
      s.kind = SessionKind::kStage1;
    } else if (kind == "stage2") {
      s.kind = SessionKind::kStage2;
    } else {
      Invalid("unknown session kind '" + kind + "'");
    }
    s.seed = j.at("seed").get<std::uint64_t>();
    s.reconciliation = j.value("reconciliation", false);
    std::set<std::string> seen;
    for (const auto& o : j.at("items")) {
      std::string id = o.at("sample_id").get<std::string>();
      if (s.kind == SessionKind::kStage1) {
        if (!seen.insert(id).second) Invalid("duplicate item " + id);
        s.stage1_items.push_back({std::move(id), Strings(o.at("input_sequence")),
                                  o.at("ground_truth").get<std::string>(),
                                  o.at("arm_a").get<std::string>(),
                                  o.at("arm_b").get<std::string>()});
      } else {
        Stage2Item item;
        item.sample_id = std::move(id);
        item.heuristic = o.at("heuristic").get<std::string>();
        if (!seen.insert(item.sample_id + "|" + item.heuristic).second) {
          Invalid("duplicate item " + item.sample_id + " " + item.heuristic);
        }
        item.input_sequence = Strings(o.at("input_sequence"));
        item.ground_truth = o.at("ground_truth").get<std::string>();
        item.removed_commits = Strings(o.at("removed_commits"));
        s.stage2_items.push_back(std::move(item));
      }
    }
    if (const auto rules = j.find("rules"); rules != j.end()) {
      for (const auto& [h, text] : rules->items()) s.rules[h] = text.get<std::string>();
    }
    if (const auto key = j.find("sealed_key"); key != j.end()) {
      s.sealed_key.emplace();
      for (const auto& [id, model] : key->at("arm_a_model").items()) {
        (*s.sealed_key)[id] = model.get<std::string>();
      }
    }
    return s;
  } catch (const Json::exception& e) {
    Invalid(std::string("malformed session: ") + e.what());
  }
}

void WriteSession(const Session& session, const std::filesystem::path& path) {
  WriteJsonFile(SessionToJson(session), path);
}

Session ReadSession(const std::filesystem::path& path) {
  return SessionFromJson(ReadJsonFile(path));
}

}  // namespace prscrub::annotate
