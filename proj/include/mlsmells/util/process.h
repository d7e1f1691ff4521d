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

#ifndef MLSMELLS_UTIL_PROCESS_H_
#define MLSMELLS_UTIL_PROCESS_H_

#include <string>
#include <utility>
#include <vector>

namespace mlsmells {

struct ProcessResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Runs `argv[0]` (looked up on PATH) with the given arguments, without a
// shell. `input` is written to the child's stdin. Extra environment entries
// are appended to the inherited environment. Throws IoError only when the
// process cannot be spawned; a non-zero exit code is reported in the result.
ProcessResult RunProcess(
    const std::vector<std::string>& argv, const std::string& input = "",
    const std::vector<std::pair<std::string, std::string>>& extra_env = {});

}  // namespace mlsmells

#endif  // MLSMELLS_UTIL_PROCESS_H_
