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

#ifndef MLSMELLS_UTIL_GIT_H_
#define MLSMELLS_UTIL_GIT_H_

#include <filesystem>
#include <string>
#include <vector>

namespace mlsmells {

// Runs `git -C repo args...` and returns stdout. Throws RepoError with git's
// stderr on a non-zero exit.
std::string Git(const std::filesystem::path& repo,
                const std::vector<std::string>& args,
                const std::string& input = "");

// Throws RepoError unless `repo` is a readable git repository.
void CheckRepository(const std::filesystem::path& repo);

}  // namespace mlsmells

#endif  // MLSMELLS_UTIL_GIT_H_
