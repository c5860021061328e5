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

#include "commands.h"

#include <pthread.h>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include "prscrub/annotate/export.h"
#include "prscrub/annotate/server.h"
#include "prscrub/annotate/session.h"
#include "prscrub/crawler.h"
#include "prscrub/error.h"
#include "prscrub/evalstats.h"
#include "prscrub/heuristics.h"
#include "prscrub/jsonl.h"
#include "prscrub/manifest.h"
#include "prscrub/parallel.h"
#include "prscrub/pipeline.h"
#include "prscrub/preprocess.h"
#include "prscrub/rng.h"
#include "prscrub/rouge.h"

namespace prscrub::cli {

namespace fs = std::filesystem;

namespace {

void Note(const GlobalOptions& g, const std::string& message) {
  if (!g.quiet) std::cerr << message << "\n";
}

RunManifest NewManifest(const GlobalOptions& g, const std::string& command) {
  return RunManifest(command, g.argv);
}

void EnsureParent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

OrderedJson ScoreJson(const RougeScore& s) {
  return {{"precision", ToPercent(s.precision)},
          {"recall", ToPercent(s.recall)},
          {"f1", ToPercent(s.f1)}};
}

std::string ModeName(MissingMode m) {
  return m == MissingMode::kSet ? "set" : "multiset";
}

std::string BasisName(LengthBasis b) {
  return b == LengthBasis::kAfterH1 ? "after-h1" : "before-h1";
}

std::vector<std::string> ReadRepoList(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::string> repos;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    repos.push_back(line.substr(b, e - b + 1));
  }
  return repos;
}

std::string RequireEnv(const std::string& var) {
  const char* v = std::getenv(var.c_str());
  if (v == nullptr || *v == '\0') {
    throw Error(ErrorCode::kAuthError, "environment variable " + var + " is unset");
  }
  return v;
}

// Lines of {item, label}, keyed by item. Duplicate items are a parse error.
std::map<std::string, std::string> ReadItemLabels(const fs::path& path) {
  std::map<std::string, std::string> out;
  JsonlReader reader(path);
  Json j;
  while (reader.Next(j)) {
    try {
      auto [it, inserted] = out.emplace(j.at("item").get<std::string>(),
                                        j.at("label").get<std::string>());
      if (!inserted) {
        ThrowParse(path, reader.line_number(), "duplicate item " + it->first);
      }
    } catch (const Json::exception& e) {
      ThrowParse(path, reader.line_number(), e.what());
    }
  }
  return out;
}

Thresholds ThresholdsFrom(double missing, double length, const std::string& mode,
                          const std::string& basis) {
  Thresholds t;
  t.missing_fraction_cutoff = missing;
  t.length_ratio_cutoff = length;
  t.missing_mode = mode == "multiset" ? MissingMode::kMultiset : MissingMode::kSet;
  t.basis = basis == "before-h1" ? LengthBasis::kBeforeH1 : LengthBasis::kAfterH1;
  t.Validate();
  return t;
}

PatternConfig PatternsFrom(const std::string& path) {
  return path.empty() ? DefaultPatternConfig() : LoadPatternConfig(path);
}

OrderedJson OverlapJson(const OverlapReport& r) {
  OrderedJson j;
  j["sample_count"] = r.sample_count;
  j["total_affected"] = r.total_affected;
  j["affected_fraction"] = r.affected_fraction;
  OrderedJson per = OrderedJson::object();
  for (std::size_t h = 0; h < 4; ++h) per[kHeuristicNames[h]] = r.per_heuristic[h];
  j["per_heuristic"] = per;
  OrderedJson regions = OrderedJson::object();
  for (unsigned mask = 1; mask < 16; ++mask) {
    regions[RegionKey(mask)] = r.region_counts[mask];
  }
  j["regions"] = regions;
  return j;
}

// Blocks SIGINT/SIGTERM on every thread, then waits for one on the caller.
class SignalWaiter {
 public:
  SignalWaiter() {
    sigemptyset(&set_);
    sigaddset(&set_, SIGINT);
    sigaddset(&set_, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set_, nullptr);
  }
  int Wait() {
    int sig = 0;
    sigwait(&set_, &sig);
    return sig;
  }

 private:
  sigset_t set_;
};

void RegisterFetch(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("fetch", "Crawl pull requests into a corpus JSONL");
  auto repos = std::make_shared<std::string>();
  auto token_env = std::make_shared<std::string>("GITHUB_TOKEN");
  auto out = std::make_shared<std::string>();
  auto max_prs = std::make_shared<std::size_t>(0);
  auto api_url = std::make_shared<std::string>(CrawlConfig{}.endpoint);
  auto page_size = std::make_shared<int>(CrawlConfig{}.page_size);
  auto commit_cap = std::make_shared<int>(CrawlConfig{}.commit_fetch_cap);
  cmd->add_option("--repos", *repos, "File with one owner/name per line")
      ->required()->check(CLI::ExistingFile);
  cmd->add_option("--token-env", *token_env, "Environment variable holding the token");
  cmd->add_option("--out", *out, "Corpus JSONL to write")->required();
  cmd->add_option("--max-prs", *max_prs, "Per-repository PR limit (0 = all)");
  cmd->add_option("--api-url", *api_url, "GraphQL endpoint");
  cmd->add_option("--page-size", *page_size, "PRs per request")->check(CLI::Range(1, 100));
  cmd->add_option("--commit-cap", *commit_cap, "Commits fetched per PR")
      ->check(CLI::Range(21, 1000));
  cmd->callback([=, &g, &action] {
    action = [=, &g] {
      RunManifest manifest = NewManifest(g, "fetch");
      CrawlConfig config;
      config.repos = ReadRepoList(*repos);
      config.auth_token = RequireEnv(*token_env);
      config.endpoint = *api_url;
      config.page_size = *page_size;
      config.commit_fetch_cap = *commit_cap;
      if (*max_prs > 0) config.max_prs_per_repo = *max_prs;
      manifest.SetConfig({{"repos", config.repos},
                          {"endpoint", config.endpoint},
                          {"page_size", config.page_size},
                          {"commit_fetch_cap", config.commit_fetch_cap},
                          {"max_prs_per_repo", *max_prs},
                          {"token_env", *token_env}});
      manifest.AddInput(*repos);

      Crawler crawler(config, MakeHttpTransport(config.endpoint, config.auth_token));
      std::vector<RawPullRequest> prs;
      for (const auto& repo : config.repos) {
        const std::size_t n =
            crawler.CrawlRepo(repo, [&](RawPullRequest pr) { prs.push_back(std::move(pr)); });
        Note(g, repo + ": " + std::to_string(n) + " PRs");
      }
      EnsureParent(*out);
      WriteJsonl(prs, *out);
      manifest.AddOutput(*out);
      manifest.Write(ManifestPathFor(*out));
      Note(g, "wrote " + std::to_string(prs.size()) + " PRs to " + *out);
      return 0;
    };
  });
}

void RegisterPreprocess(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("preprocess", "Apply the corpus filters");
  auto in = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto stats = std::make_shared<std::string>();
  cmd->add_option("--in", *in, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Sample JSONL to write")->required();
  cmd->add_option("--stats", *stats, "Filter counts JSON")->required();
  cmd->callback([=, &g, &action] {
    action = [=, &g] {
      RunManifest manifest = NewManifest(g, "preprocess");
      manifest.AddInput(*in);
      const auto result = Preprocess(ReadJsonl(*in));
      EnsureParent(*out);
      EnsureParent(*stats);
      WriteSamples(result.samples, *out);
      const PreprocessStats& s = result.stats;
      OrderedJson sj;
      sj["initial"] = s.initial;
      sj["too_few_commits"] = s.too_few_commits;
      sj["too_many_commits"] = s.too_many_commits;
      sj["non_ascii"] = s.non_ascii;
      sj["bot_written"] = s.bot_written;
      sj["empty_description"] = s.empty_description;
      sj["left"] = s.left;
      WriteJsonFile(sj, *stats);
      manifest.SetConfig({{"min_commits", kMinCommits}, {"max_commits", kMaxCommits}});
      manifest.AddOutput(*out);
      manifest.AddOutput(*stats);
      manifest.Write(ManifestPathFor(*out));
      Note(g, std::to_string(s.left) + " of " + std::to_string(s.initial) + " PRs kept");
      return 0;
    };
  });
}

void RegisterSplit(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("split", "Seeded 8:1:1 train/val/test split");
  auto in = std::make_shared<std::string>();
  auto out_dir = std::make_shared<std::string>();
  cmd->add_option("--in", *in, "Sample JSONL")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", *out_dir, "Directory for train/val/test.jsonl")->required();
  cmd->callback([=, &g, &action] {
    action = [=, &g] {
      RunManifest manifest = NewManifest(g, "split");
      manifest.AddInput(*in);
      const auto samples = ReadSamples(*in);
      std::vector<std::string> ids;
      ids.reserve(samples.size());
      std::map<std::string, std::size_t> index;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        ids.push_back(samples[i].id);
        if (!index.emplace(samples[i].id, i).second) {
          throw Error(ErrorCode::kParseError, "duplicate sample id " + samples[i].id);
        }
      }
      const SplitAssignment split = Split(ids, g.seed);
      const fs::path dir = *out_dir;
      fs::create_directories(dir);
      const auto write_part = [&](const std::vector<std::string>& part, const char* name) {
        std::vector<PrSample> rows;
        rows.reserve(part.size());
        for (const auto& id : part) rows.push_back(samples[index.at(id)]);
        WriteSamples(rows, dir / name);
        manifest.AddOutput(dir / name);
      };
      write_part(split.train_ids, "train.jsonl");
      write_part(split.val_ids, "val.jsonl");
      write_part(split.test_ids, "test.jsonl");

      OrderedJson meta;
      meta["seed"] = g.seed;
      meta["prng"] = kPrngName;
      meta["total"] = ids.size();
      meta["sizes"] = {{"train", split.train_ids.size()},
                       {"val", split.val_ids.size()},
                       {"test", split.test_ids.size()}};
      WriteJsonFile(meta, dir / "split.json");
      manifest.AddOutput(dir / "split.json");
      manifest.SetConfig({{"seed", g.seed}, {"prng", kPrngName}});
      manifest.Write(ManifestPathFor(dir / "split.json"));
      Note(g, "train " + std::to_string(split.train_ids.size()) + ", val " +
                  std::to_string(split.val_ids.size()) + ", test " +
                  std::to_string(split.test_ids.size()));
      return 0;
    };
  });
}

void RegisterClean(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("clean", "Apply the four noise heuristics");
  auto in = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto flags = std::make_shared<std::string>();
  auto patterns = std::make_shared<std::string>();
  auto missing = std::make_shared<double>(Thresholds{}.missing_fraction_cutoff);
  auto length = std::make_shared<double>(Thresholds{}.length_ratio_cutoff);
  auto mode = std::make_shared<std::string>("set");
  auto basis = std::make_shared<std::string>("after-h1");
  cmd->add_option("--in", *in, "Sample JSONL")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Cleaned sample JSONL")->required();
  cmd->add_option("--flags", *flags, "Per-sample heuristic flags JSONL")->required();
  cmd->add_option("--patterns", *patterns, "Pattern table file (TOML)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--missing-cutoff", *missing, "H3 cutoff in (0, 1]");
  cmd->add_option("--length-cutoff", *length, "H4 cutoff in (0, 1]");
  cmd->add_option("--missing-mode", *mode, "set | multiset")
      ->check(CLI::IsMember({"set", "multiset"}));
  cmd->add_option("--basis", *basis, "Input used by H3/H4: after-h1 | before-h1")
      ->check(CLI::IsMember({"after-h1", "before-h1"}));
  cmd->callback([=, &g, &action] {
    action = [=, &g] {
      RunManifest manifest = NewManifest(g, "clean");
      const Thresholds t = ThresholdsFrom(*missing, *length, *mode, *basis);
      const Heuristics heuristics(PatternsFrom(*patterns), t);
      manifest.AddInput(*in);
      if (!patterns->empty()) manifest.AddInput(*patterns);
      const auto samples = ReadSamples(*in);

      std::vector<std::pair<std::optional<PrSample>, HeuristicFlags>> results(samples.size());
      ParallelFor(samples.size(), g.jobs,
                  [&](std::size_t i) { results[i] = heuristics.Apply(samples[i]); });

      std::vector<PrSample> kept;
      std::vector<OrderedJson> flag_lines;
      flag_lines.reserve(samples.size());
      std::vector<HeuristicFlags> all_flags;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (results[i].first) kept.push_back(std::move(*results[i].first));
        flag_lines.push_back(annotate::FlagsToJson(samples[i].id, results[i].second));
        all_flags.push_back(results[i].second);
      }
      EnsureParent(*out);
      EnsureParent(*flags);
      WriteSamples(kept, *out);
      WriteJsonLines(flag_lines, *flags);

      manifest.SetConfig({{"missing_fraction_cutoff", t.missing_fraction_cutoff},
                          {"length_ratio_cutoff", t.length_ratio_cutoff},
                          {"missing_mode", ModeName(t.missing_mode)},
                          {"basis", BasisName(t.basis)},
                          {"patterns", patterns->empty()
                                           ? "builtin:" + Sha256Hex(DefaultPatternsToml())
                                           : *patterns}});
      manifest.AddOutput(*out);
      manifest.AddOutput(*flags);
      manifest.Write(ManifestPathFor(*out));
      const OverlapReport overlap = OverlapStats(all_flags);
      Note(g, std::to_string(kept.size()) + " of " + std::to_string(samples.size()) +
                  " samples kept; H1 " + std::to_string(overlap.per_heuristic[0]) +
                  ", H2 " + std::to_string(overlap.per_heuristic[1]) + ", H3 " +
                  std::to_string(overlap.per_heuristic[2]) + ", H4 " +
                  std::to_string(overlap.per_heuristic[3]));
      return 0;
    };
  });
}

void RegisterSample(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("sample", "Seeded uniform sample without replacement");
  auto in = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto n = std::make_shared<std::size_t>(0);
  cmd->add_option("--in", *in, "Sample JSONL")->required()->check(CLI::ExistingFile);
  cmd->add_option("--n", *n, "Sample size")->required();
  cmd->add_option("--out", *out, "Sampled JSONL")->required();
  cmd->callback([=, &g, &action] {
    action = [=, &g] {
      RunManifest manifest = NewManifest(g, "sample");
      manifest.AddInput(*in);
      const auto samples = ReadSamples(*in);
      std::vector<PrSample> picked;
      for (std::size_t i : SampleIndices(samples.size(), *n, g.seed)) {
        picked.push_back(samples[i]);
      }
      EnsureParent(*out);
      WriteSamples(picked, *out);
      manifest.SetConfig({{"n", *n}, {"seed", g.seed}, {"prng", kPrngName}});
      manifest.AddOutput(*out);
      manifest.Write(ManifestPathFor(*out));
      return 0;
    };
  });
}

void RegisterStats(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("stats", "Heuristic overlap counts");
  auto flags = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--flags", *flags, "Flags JSONL from clean")
      ->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Overlap JSON")->required();
  cmd->callback([=, &g, &action] {
    action = [=, &g] {
      RunManifest manifest = NewManifest(g, "stats");
      manifest.AddInput(*flags);
      std::vector<HeuristicFlags> all;
      for (const auto& f : annotate::ReadFlags(*flags)) all.push_back(f.flags);
      EnsureParent(*out);
      WriteJsonFile(OverlapJson(OverlapStats(all)), *out);
      manifest.AddOutput(*out);
      manifest.Write(ManifestPathFor(*out));
      return 0;
    };
  });
}

void RegisterRouge(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("rouge", "ROUGE-1/2/L over generated/reference pairs");
  auto pairs = std::make_shared<std::string>();
  auto mode = std::make_shared<std::string>("example_mean");
  auto out = std::make_shared<std::string>();
  cmd->add_option("--pairs", *pairs, "JSONL of {id, generated, reference}")
      ->required()->check(CLI::ExistingFile);
  cmd->add_option("--mode", *mode, "example_mean | corpus_sum")
      ->check(CLI::IsMember({"example_mean", "corpus_sum"}));
  cmd->add_option("--out", *out, "Report JSON")->required();
  cmd->callback([=, &g, &action] {
    action = [=, &g] {
      RunManifest manifest = NewManifest(g, "rouge");
      manifest.AddInput(*pairs);
      const auto rows = ReadJsonlAs<TextPair>(*pairs, [](const Json& j) {
        return TextPair{j.at("generated").get<std::string>(),
                        j.at("reference").get<std::string>()};
      });
      const RougeReport r = ScoreCorpus(rows, ParseAggregationMode(*mode), g.jobs);
      OrderedJson report;
      report["mode"] = AggregationModeName(r.mode);
      report["pairs"] = r.pair_count;
      report["rouge1"] = ScoreJson(r.rouge1);
      report["rouge2"] = ScoreJson(r.rouge2);
      report["rougeL"] = ScoreJson(r.rougeL);
      EnsureParent(*out);
      WriteJsonFile(report, *out);
      manifest.SetConfig({{"mode", *mode}});
      manifest.AddOutput(*out);
      manifest.Write(ManifestPathFor(*out));
      if (!g.quiet) std::cout << report.dump() << "\n";
      return 0;
    };
  });
}

void RegisterCochran(CLI::App& app, GlobalOptions&, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("cochran", "Sample size for a proportion estimate");
  auto params = std::make_shared<CochranParams>();
  cmd->add_option("--confidence", params->confidence, "Confidence level in (0, 1)")
      ->required();
  cmd->add_option("--margin", params->margin, "Margin of error in (0, 1)")->required();
  cmd->add_option("--proportion", params->proportion, "Expected proportion in [0, 1]");
  cmd->callback([=, &action] {
    action = [=] {
      std::cout << CochranSampleSize(*params) << "\n";
      return 0;
    };
  });
}

void RegisterKappa(CLI::App& app, GlobalOptions&, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("kappa", "Cohen's kappa between two label files");
  auto a = std::make_shared<std::string>();
  auto b = std::make_shared<std::string>();
  cmd->add_option("--a", *a, "JSONL of {item, label}")->required()->check(CLI::ExistingFile);
  cmd->add_option("--b", *b, "JSONL of {item, label}")->required()->check(CLI::ExistingFile);
  cmd->callback([=, &action] {
    action = [=] {
      const auto la = ReadItemLabels(*a);
      const auto lb = ReadItemLabels(*b);
      std::vector<std::string> va, vb;
      for (const auto& [item, label] : la) {
        const auto it = lb.find(item);
        if (it == lb.end()) {
          throw Error(ErrorCode::kLengthMismatch, "item " + item + " missing from " + *b);
        }
        va.push_back(label);
        vb.push_back(it->second);
      }
      if (la.size() != lb.size()) {
        throw Error(ErrorCode::kLengthMismatch,
                    *b + " has items missing from " + *a);
      }
      const KappaResult k = CohenKappa(va, vb);
      OrderedJson j;
      j["kappa"] = k.kappa;
      j["observed_agreement"] = k.observed_agreement;
      j["expected_agreement"] = k.expected_agreement;
      j["items"] = k.n_items;
      std::cout << j.dump() << "\n";
      return 0;
    };
  });
}

struct NoiseLabelRows {
  std::map<std::pair<std::string, std::string>, Verdict> labels;
};

NoiseLabelRows ReadFinalLabels(const fs::path& path) {
  NoiseLabelRows rows;
  JsonlReader reader(path);
  Json j;
  while (reader.Next(j)) {
    try {
      const std::pair<std::string, std::string> key{j.at("sample_id").get<std::string>(),
                                                    j.at("heuristic").get<std::string>()};
      if (!rows.labels.emplace(key, ParseVerdict(j.at("verdict").get<std::string>()))
               .second) {
        ThrowParse(path, reader.line_number(),
                   "duplicate label for " + key.first + " " + key.second);
      }
    } catch (const Json::exception& e) {
      ThrowParse(path, reader.line_number(), e.what());
    }
  }
  return rows;
}

void RegisterAudit(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("audit", "Per-heuristic TP/FP accuracy table");
  auto labels = std::make_shared<std::string>();
  auto raters = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--labels", *labels, "Final labels JSONL {sample_id, heuristic, verdict}")
      ->required()->check(CLI::ExistingFile);
  cmd->add_option("--raters", *raters, "Per-rater labels JSONL for agreement")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Audit JSON")->required();
  cmd->callback([=, &g, &action] {
    action = [=, &g] {
      RunManifest manifest = NewManifest(g, "audit");
      manifest.AddInput(*labels);
      const NoiseLabelRows rows = ReadFinalLabels(*labels);
      if (rows.labels.empty()) throw Error(ErrorCode::kEmptyInput, *labels + " has no labels");
      std::vector<annotate::NoiseLabel> per_rater;
      if (!raters->empty()) {
        manifest.AddInput(*raters);
        per_rater = ReadJsonlAs<annotate::NoiseLabel>(*raters, [](const Json& j) {
          annotate::NoiseLabel l;
          l.sample_id = j.at("sample_id").get<std::string>();
          l.heuristic = j.at("heuristic").get<std::string>();
          l.rater_id = j.at("rater_id").get<std::string>();
          l.verdict = ParseVerdict(j.at("verdict").get<std::string>());
          return l;
        });
      }
      OrderedJson audit;
      audit["rows"] = annotate::AuditTable(rows.labels, per_rater);
      EnsureParent(*out);
      WriteJsonFile(audit, *out);
      manifest.AddOutput(*out);
      manifest.Write(ManifestPathFor(*out));
      if (!g.quiet) std::cout << audit.dump() << "\n";
      return 0;
    };
  });
}

void RegisterAnnotate(CLI::App& app, GlobalOptions& g, std::function<int()>& action) {
  auto* annotate = app.add_subcommand("annotate", "Human evaluation sessions");
  annotate->require_subcommand(1);

  {
    auto* cmd = annotate->add_subcommand("build-stage1", "Blinded pairwise rating session");
    auto in = std::make_shared<std::string>();
    auto n = std::make_shared<std::size_t>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--in", *in, "JSONL of {id, input_sequence, reference, cleaned, uncleaned}")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--n", *n, "Number of samples")->required();
    cmd->add_option("--out", *out, "Session JSON")->required();
    cmd->callback([=, &g, &action] {
      action = [=, &g] {
        RunManifest manifest = NewManifest(g, "annotate build-stage1");
        manifest.AddInput(*in);
        const auto session = annotate::BuildStage1Session(
            annotate::ReadScoredDescriptions(*in), *n, g.seed);
        EnsureParent(*out);
        annotate::WriteSession(session, *out);
        manifest.SetConfig({{"n", *n}, {"seed", g.seed}, {"prng", kPrngName}});
        manifest.AddOutput(*out);
        manifest.Write(ManifestPathFor(*out));
        return 0;
      };
    });
  }
  {
    auto* cmd = annotate->add_subcommand("build-stage2", "Heuristic audit session");
    auto flags = std::make_shared<std::string>();
    auto samples = std::make_shared<std::string>();
    auto patterns = std::make_shared<std::string>();
    auto n = std::make_shared<std::size_t>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--flags", *flags, "Flags JSONL from clean")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--samples", *samples, "Sample JSONL given to clean")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--patterns", *patterns, "Pattern table file (TOML)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--n", *n, "Samples per heuristic")->required();
    cmd->add_option("--out", *out, "Session JSON")->required();
    cmd->callback([=, &g, &action] {
      action = [=, &g] {
        RunManifest manifest = NewManifest(g, "annotate build-stage2");
        manifest.AddInput(*flags);
        manifest.AddInput(*samples);
        if (!patterns->empty()) manifest.AddInput(*patterns);
        const Heuristics heuristics(PatternsFrom(*patterns));
        const auto session = annotate::BuildStage2Session(
            annotate::ReadFlags(*flags), ReadSamples(*samples), *n, g.seed, heuristics);
        EnsureParent(*out);
        annotate::WriteSession(session, *out);
        manifest.SetConfig({{"n", *n}, {"seed", g.seed}, {"prng", kPrngName}});
        manifest.AddOutput(*out);
        manifest.Write(ManifestPathFor(*out));
        return 0;
      };
    });
  }
  {
    auto* cmd = annotate->add_subcommand("build-reconcile",
                                         "Session over the items raters disagreed on");
    auto session_path = std::make_shared<std::string>();
    auto worksheet = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--session", *session_path, "Stage-2 session JSON")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--worksheet", *worksheet, "reconciliation.jsonl from export")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", *out, "Session JSON")->required();
    cmd->callback([=, &g, &action] {
      action = [=, &g] {
        RunManifest manifest = NewManifest(g, "annotate build-reconcile");
        manifest.AddInput(*session_path);
        manifest.AddInput(*worksheet);
        std::vector<Json> rows;
        JsonlReader reader(*worksheet);
        Json j;
        while (reader.Next(j)) rows.push_back(j);
        const auto session =
            annotate::BuildReconciliationSession(annotate::ReadSession(*session_path), rows);
        EnsureParent(*out);
        annotate::WriteSession(session, *out);
        manifest.AddOutput(*out);
        manifest.Write(ManifestPathFor(*out));
        return 0;
      };
    });
  }
  {
    auto* cmd = annotate->add_subcommand("serve", "Serve a session over HTTP");
    auto session_path = std::make_shared<std::string>();
    auto store = std::make_shared<std::string>();
    auto host = std::make_shared<std::string>("127.0.0.1");
    auto port = std::make_shared<int>(8080);
    auto token_env = std::make_shared<std::string>();
    auto ui_dir = std::make_shared<std::string>();
    cmd->add_option("--session", *session_path, "Session JSON")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--store", *store, "Judgment store JSONL (created if absent)")
        ->required();
    cmd->add_option("--host", *host, "Bind address");
    cmd->add_option("--port", *port, "Port (0 = any free port)")->check(CLI::Range(0, 65535));
    cmd->add_option("--token-env", *token_env,
                    "Environment variable holding a shared session token");
    cmd->add_option("--ui-dir", *ui_dir, "Static UI directory")->check(CLI::ExistingDirectory);
    cmd->callback([=, &g, &action] {
      action = [=, &g] {
        annotate::ServerOptions options;
        options.host = *host;
        options.port = *port;
        if (!token_env->empty()) options.session_token = RequireEnv(*token_env);
        if (!ui_dir->empty()) options.ui_dir = fs::path(*ui_dir);
        SignalWaiter signals;
        EnsureParent(*store);
        annotate::AnnotationServer server(annotate::ReadSession(*session_path), *store,
                                          options);
        server.Start();
        std::cout << "listening on http://" << options.host << ":" << server.port()
                  << std::endl;
        signals.Wait();
        server.Stop();
        Note(g, "stopped");
        return 0;
      };
    });
  }
  {
    auto* cmd = annotate->add_subcommand("export", "Unblind and export judgments");
    auto session_path = std::make_shared<std::string>();
    auto store = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>();
    auto reconcile = std::make_shared<std::string>();
    auto lenient = std::make_shared<bool>(false);
    cmd->add_option("--session", *session_path, "Session JSON with sealed key")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--store", *store, "Judgment store JSONL")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out-dir", *out_dir, "Export directory")->required();
    cmd->add_option("--reconcile-store", *reconcile, "Store from a reconciliation session")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--lenient", *lenient, "Skip corrupt store lines instead of failing");
    cmd->callback([=, &g, &action] {
      action = [=, &g] {
        RunManifest manifest = NewManifest(g, "annotate export");
        manifest.AddInput(*session_path);
        manifest.AddInput(*store);
        annotate::ExportOptions options;
        options.out_dir = *out_dir;
        options.lenient = *lenient;
        if (!reconcile->empty()) {
          options.reconcile_store = fs::path(*reconcile);
          manifest.AddInput(*reconcile);
        }
        const auto written =
            annotate::UnblindAndExport(annotate::ReadSession(*session_path), *store, options);
        for (const auto& p : written) manifest.AddOutput(p);
        manifest.SetConfig({{"lenient", *lenient}});
        manifest.Write(fs::path(*out_dir) / "export.manifest.json");
        Note(g, "wrote " + std::to_string(written.size()) + " files to " + *out_dir);
        return 0;
      };
    });
  }
}

void RegisterPatterns(CLI::App& app, GlobalOptions&, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("patterns", "Print the built-in pattern tables");
  cmd->callback([&action] {
    action = [] {
      std::cout << DefaultPatternsToml();
      return 0;
    };
  });
}

}  // namespace

void RegisterCommands(CLI::App& app, GlobalOptions& global,
                      std::function<int()>& action) {
  RegisterFetch(app, global, action);
  RegisterPreprocess(app, global, action);
  RegisterSplit(app, global, action);
  RegisterClean(app, global, action);
  RegisterSample(app, global, action);
  RegisterStats(app, global, action);
  RegisterRouge(app, global, action);
  RegisterCochran(app, global, action);
  RegisterKappa(app, global, action);
  RegisterAudit(app, global, action);
  RegisterAnnotate(app, global, action);
  RegisterPatterns(app, global, action);
}

}  // namespace prscrub::cli
