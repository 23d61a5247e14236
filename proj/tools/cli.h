// Copyright 2026 The adregret Authors. All rights reserved.
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

// Command layer of the adregret tool. Every command is described by a
// RunManifest: the command name plus the fully resolved option map. Outputs
// embed the manifest, and `rerun` replays one.

#ifndef ADREGRET_TOOLS_CLI_H_
#define ADREGRET_TOOLS_CLI_H_

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace adregret::cli {

inline constexpr std::string_view kVersion = "0.1.0";
// Overrides the default simulation seed when --seed is not given.
inline constexpr const char* kSeedEnv = "ADREGRET_SEED";

using Options = std::map<std::string, std::string>;

struct OptionSpec {
  std::string key;
  std::string default_value;
  std::string help;
  bool flag = false;      // boolean switch, stored as "true"/"false"
  bool required = false;
};

std::vector<std::string> Commands();
// Throws Error(kInvalidArgument) for unknown commands.
const std::vector<OptionSpec>& CommandOptions(std::string_view command);

struct RunManifest {
  std::string command;
  Options options;

  // "# key=value" lines, command first, then options in key order.
  std::string CommentBlock() const;
  nlohmann::json ToJson() const;
};

// Reads the manifest embedded in an output file: '#' lines of a CSV or the
// "manifest" member of a JSON document.
RunManifest ExtractManifest(const std::string& text);

// Merges, lowest precedence first: defaults, the seed environment variable,
// the key=value config file named by the "config" option, explicit flags.
// Records content hashes of the input files.
RunManifest ResolveManifest(const std::string& command, const Options& flags,
                            const char* seed_env);

// Executes a resolved manifest. Warnings go to `log`. Throws Error.
void RunCommand(const RunManifest& manifest, std::ostream& log);

// Process entry point: parses argv, runs, and turns failures into a single
// "error: code=<code> message=<text>" line on `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace adregret::cli

#endif  // ADREGRET_TOOLS_CLI_H_
