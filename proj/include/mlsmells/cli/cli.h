// Copyright 2026 The mlsmells Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MLSMELLS_CLI_CLI_H_
#define MLSMELLS_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace mlsmells {

// Process exit codes. Nothing else is ever returned.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPolicy = 1;  // --fail-on-smell and smells found
inline constexpr int kExitError = 2;   // operational error

// Subcommands: detect, mine, lifecycle, analyze, sample, validate.
// `args` excludes the program name. Human-readable summaries go to `out`,
// warnings and errors to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Name of the marker written once a project's stage completes; reruns skip
// projects whose marker exists.
inline constexpr const char* kMinedMarker = ".mined";
inline constexpr const char* kLifecycleMarker = ".lifecycle-done";

}  // namespace mlsmells

#endif  // MLSMELLS_CLI_CLI_H_
