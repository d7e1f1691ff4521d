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

#ifndef MLSMELLS_TESTING_FIXTURES_H_
#define MLSMELLS_TESTING_FIXTURES_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "mlsmells/pysource/syntax_tree.h"

namespace mlsmells::testing {

std::filesystem::path FixturePath(std::string_view relative);
std::string ReadFixture(std::string_view relative);
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view rel) const {
    return path_ / rel;
  }

 private:
  std::filesystem::path path_;
};

// Parses `source` and fails the current test on a syntax error.
pysource::SyntaxTree MustParse(std::string_view source);

// First node of `kind` whose text equals `text`, or kNoNode.
pysource::NodeId FindNode(const pysource::SyntaxTree& tree,
                          pysource::NodeKind kind, std::string_view text);

}  // namespace mlsmells::testing

#endif  // MLSMELLS_TESTING_FIXTURES_H_
