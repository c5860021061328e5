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

#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "prscrub/error.h"
#include "prscrub/jsonl.h"
#include "prscrub/manifest.h"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

void PrintError(std::string_view code, const std::string& detail) {
  std::cerr << prscrub::OrderedJson{{"error", code}, {"detail", detail}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  prscrub::cli::GlobalOptions global;
  for (int i = 1; i < argc; ++i) global.argv.emplace_back(argv[i]);

  CLI::App app{"prscrub: pull-request description dataset tools", "prscrub"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(prscrub::kToolVersion));
  app.add_option("--seed", global.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--jobs", global.jobs, "Worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_flag("--quiet,-q", global.quiet, "Suppress progress messages");

  std::function<int()> action;
  prscrub::cli::RegisterCommands(app, global, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("UsageError", e.what());
    const CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
    std::cerr << deepest->help();
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const prscrub::Error& e) {
    PrintError(prscrub::ErrorCodeName(e.code()), e.detail());
  } catch (const std::exception& e) {
    PrintError("IoError", e.what());
  }
  return kExitData;
}
