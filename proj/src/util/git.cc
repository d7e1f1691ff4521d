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

#include "mlsmells/util/git.h"

#include "fmt/core.h"
#include "mlsmells/util/errors.h"
#include "mlsmells/util/process.h"

namespace mlsmells {

std::string Git(const std::filesystem::path& repo,
                const std::vector<std::string>& args,
                const std::string& input) {
  std::vector<std::string> argv = {"git", "-C", repo.string()};
  argv.insert(argv.end(), args.begin(), args.end());
  ProcessResult r;
  try {
    // Keep user configuration from changing output formats.
    r = RunProcess(argv, input,
                   {{"GIT_CONFIG_NOSYSTEM", "1"}, {"LC_ALL", "C"}});
  } catch (const IoError& e) {
    throw RepoError(e.what());
  }
  if (r.exit_code != 0) {
    std::string err = r.err;
    while (!err.empty() && (err.back() == '\n' || err.back() == '\r')) {
      err.pop_back();
    }
    throw RepoError(fmt::format("git {} failed in {}: {}",
                                args.empty() ? "" : args[0], repo.string(),
                                err));
  }
  return std::move(r.out);
}

void CheckRepository(const std::filesystem::path& repo) {
  std::error_code ec;
  if (!std::filesystem::is_directory(repo, ec)) {
    throw RepoError("no such repository: " + repo.string());
  }
  Git(repo, {"rev-parse", "--git-dir"});
}

}  // namespace mlsmells
