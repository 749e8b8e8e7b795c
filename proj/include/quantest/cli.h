// Copyright 2026 The quantest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUANTEST_CLI_H_
#define QUANTEST_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace quantest {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

// Entry point of the `quantest` tool. `args` excludes the program name.
//
//   quantest test  (--input a.csv b.csv ... | --grouped g.csv) [options]
//   quantest power --out curve.csv [--svg plot.svg] [options]
//
// Returns 0 on success (whatever the decision), 2 on usage, parse or
// validation errors and 3 on numeric or runtime failures.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quantest

#endif  // QUANTEST_CLI_H_
