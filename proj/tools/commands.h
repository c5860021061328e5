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

#ifndef PRSCRUB_TOOLS_COMMANDS_H_
#define PRSCRUB_TOOLS_COMMANDS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace prscrub::cli {

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool quiet = false;
  std::vector<std::string> argv;  // without the program name
};

// Registers every subcommand on `app`. The selected command's body is stored
// in `action` and run by main() after parsing succeeds.
void RegisterCommands(CLI::App& app, GlobalOptions& global,
                      std::function<int()>& action);

}  // namespace prscrub::cli

#endif  // PRSCRUB_TOOLS_COMMANDS_H_
