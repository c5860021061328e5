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

#include "prscrub/annotate/export.h"

#include <cmath>
#include <set>

#include "prscrub/error.h"
#include "prscrub/rouge.h"

namespace prscrub::annotate {

namespace {

std::string SafeName(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "_" : out;
}

std::string OtherModel(const std::string& model) {
  return model == kCleanedModel ? kUncleanedModel : kCleanedModel;
}

}  // namespace

std::vector<RatingRecord> UnblindRatings(const Session& session,
                                         const std::vector<RatingRecord>& ratings) {
  if (!session.sealed_key) {
    throw Error(ErrorCode::kMissingKey, "session has no sealed key section");
  }
  std::vector<RatingRecord> out;
  out.reserve(ratings.size());
  for (RatingRecord r : ratings) {
    const auto it = session.sealed_key->find(r.sample_id);
    if (it == session.sealed_key->end()) {
      throw Error(ErrorCode::kMissingKey, "no arm key for " + r.sample_id);
    }
    r.arm = r.arm == "A" ? it->second : OtherModel(it->second);
    out.push_back(std::move(r));
  }
  return out;
}

Stage2Resolution ResolveLabels(const std::vector<NoiseLabel>& labels,
                               const std::vector<NoiseLabel>& reconciled) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::map<std::string, Verdict>> by_item;
  for (const auto& l : labels) by_item[{l.sample_id, l.heuristic}][l.rater_id] = l.verdict;
  std::map<Key, Verdict> resolved;
  for (const auto& l : reconciled) resolved.emplace(Key{l.sample_id, l.heuristic}, l.verdict);

  Stage2Resolution out;
  for (const auto& [key, verdicts] : by_item) {
    std::set<Verdict> distinct;
    for (const auto& [rater, v] : verdicts) distinct.insert(v);
    if (distinct.size() == 1) {
      out.final_labels[key] = *distinct.begin();
      continue;
    }
    if (const auto it = resolved.find(key); it != resolved.end()) {
      out.final_labels[key] = it->second;
      continue;
    }
    OrderedJson row;
    row["sample_id"] = key.first;
    row["heuristic"] = key.second;
    OrderedJson v = OrderedJson::object();
    for (const auto& [rater, verdict] : verdicts) v[rater] = VerdictName(verdict);
    row["verdicts"] = std::move(v);
    out.worksheet.push_back(std::move(row));
  }
  return out;
}

OrderedJson AuditTable(
    const std::map<std::pair<std::string, std::string>, Verdict>& final_labels,
    const std::vector<NoiseLabel>& rater_labels) {
  std::map<std::string, std::vector<std::pair<std::string, Verdict>>> per_heuristic;
  for (const auto& [key, verdict] : final_labels) {
    per_heuristic[key.second].emplace_back(key.first, verdict);
  }

  OrderedJson rows = OrderedJson::array();
  for (const auto& [heuristic, labels] : per_heuristic) {
    const HeuristicAudit audit = AuditHeuristic(heuristic, labels);
    OrderedJson row;
    row["heuristic"] = audit.heuristic;
    row["tp"] = audit.tp;
    row["fp"] = audit.fp;
    row["accuracy"] = ToPercent(audit.accuracy);

    std::map<std::string, std::map<std::string, Verdict>> by_rater;
    for (const auto& l : rater_labels) {
      if (l.heuristic == heuristic) by_rater[l.rater_id][l.sample_id] = l.verdict;
    }
    row["inter_rater_reliability"] = nullptr;
    if (by_rater.size() >= 2) {
      const auto& a = by_rater.begin()->second;
      const auto& b = std::next(by_rater.begin())->second;
      std::vector<std::string> la, lb;
      for (const auto& [id, v] : a) {
        if (const auto it = b.find(id); it != b.end()) {
          la.emplace_back(VerdictName(v));
          lb.emplace_back(VerdictName(it->second));
        }
      }
      if (!la.empty()) {
        row["inter_rater_reliability"] = std::round(CohenKappa(la, lb).kappa * 100.0) / 100.0;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::filesystem::path> UnblindAndExport(
    const Session& session, const std::filesystem::path& store_path,
    const ExportOptions& options) {
  namespace fs = std::filesystem;
  const JudgmentStore store = JudgmentStore::Open(store_path, !options.lenient);
  fs::create_directories(options.out_dir / "kappa");
  std::vector<fs::path> written;
  const auto emit_lines = [&](const fs::path& p, const std::vector<OrderedJson>& lines) {
    WriteJsonLines(lines, p);
    written.push_back(p);
  };

  if (session.kind == SessionKind::kStage1) {
    const auto ratings = UnblindRatings(session, store.ratings());

    std::vector<OrderedJson> rows;
    std::map<std::pair<std::string, std::string>, std::vector<OrderedJson>> kappa_files;
    for (const auto& r : ratings) {
      OrderedJson j;
      j["sample_id"] = r.sample_id;
      j["rater_id"] = r.rater_id;
      j["model"] = r.arm;
      for (Criterion c : kCriteria) j[std::string(CriterionName(c))] = r.Score(c);
      rows.push_back(std::move(j));
      for (Criterion c : kCriteria) {
        kappa_files[{std::string(CriterionName(c)), r.rater_id}].push_back(
            {{"item", r.sample_id + "|" + r.arm},
             {"label", std::to_string(r.Score(c))}});
      }
    }
    emit_lines(options.out_dir / "ratings_unblinded.jsonl", rows);
    for (const auto& [key, lines] : kappa_files) {
      emit_lines(options.out_dir / "kappa" /
                     ("stage1." + key.first + "." + SafeName(key.second) + ".jsonl"),
                 lines);
    }

    OrderedJson dist = OrderedJson::object();
    for (const auto& [model, d] : ScoreDistribution(ratings)) {
      OrderedJson m;
      m["ratings"] = d.ratings;
      for (Criterion c : kCriteria) {
        OrderedJson col;
        const auto it = d.counts.find(c);
        OrderedJson counts = OrderedJson::object();
        OrderedJson percent = OrderedJson::object();
        for (int s = 1; s <= 4; ++s) {
          counts[std::to_string(s)] = it == d.counts.end() ? 0 : it->second[s - 1];
          percent[std::to_string(s)] = std::round(d.Percent(c, s) * 100.0) / 100.0;
        }
        col["counts"] = counts;
        col["percent"] = percent;
        col["mean"] = d.Mean(c);
        m[std::string(CriterionName(c))] = col;
      }
      dist[model] = m;
    }
    WriteJsonFile(dist, options.out_dir / "distribution.json");
    written.push_back(options.out_dir / "distribution.json");
    return written;
  }

  const auto labels = store.labels();
  std::vector<NoiseLabel> reconciled;
  if (options.reconcile_store) {
    reconciled = JudgmentStore::Open(*options.reconcile_store, !options.lenient).labels();
  }

  std::vector<OrderedJson> by_rater;
  std::map<std::pair<std::string, std::string>, std::vector<OrderedJson>> kappa_files;
  for (const auto& l : labels) {
    OrderedJson j = LabelToJson(l);
    j.erase("type");
    j.erase("timestamp");
    by_rater.push_back(std::move(j));
    kappa_files[{l.heuristic, l.rater_id}].push_back(
        {{"item", l.sample_id}, {"label", VerdictName(l.verdict)}});
  }
  emit_lines(options.out_dir / "labels_by_rater.jsonl", by_rater);
  for (const auto& [key, lines] : kappa_files) {
    emit_lines(options.out_dir / "kappa" /
                   (SafeName(key.first) + "." + SafeName(key.second) + ".jsonl"),
               lines);
  }

  const Stage2Resolution resolution = ResolveLabels(labels, reconciled);
  emit_lines(options.out_dir / "reconciliation.jsonl", resolution.worksheet);

  std::vector<OrderedJson> final_rows;
  for (const auto& [key, verdict] : resolution.final_labels) {
    final_rows.push_back({{"sample_id", key.first},
                          {"heuristic", key.second},
                          {"verdict", VerdictName(verdict)}});
  }
  emit_lines(options.out_dir / "labels.jsonl", final_rows);

  OrderedJson audit;
  audit["rows"] = resolution.final_labels.empty()
                      ? OrderedJson::array()
                      : AuditTable(resolution.final_labels, labels);
  audit["unresolved"] = resolution.worksheet.size();
  WriteJsonFile(audit, options.out_dir / "audit.json");
  written.push_back(options.out_dir / "audit.json");
  return written;
}

}  // namespace prscrub::annotate
