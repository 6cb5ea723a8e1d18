// Copyright 2026 The Argsup Authors.
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

#ifndef ARGSUP_CLI_H_
#define ARGSUP_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace argsup {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Results go to
// `out`, diagnostics to `err`. Returns 0 on success, 1 on validation or
// lookup failure, 2 on a usage error.
int RunCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a of the compact dump of `config` minus the keys that do not
// affect results ("jobs", "output_dir"), as 16 hex digits.
std::string ConfigHash(const nlohmann::json& config);

}  // namespace argsup

#endif  // ARGSUP_CLI_H_
