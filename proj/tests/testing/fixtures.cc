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

#include "testing/fixtures.h"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gtest/gtest.h"
#include "mlsmells/pysource/parser.h"

namespace mlsmells::testing {

namespace fs = std::filesystem;

fs::path FixturePath(std::string_view relative) {
  return fs::path(MLSMELLS_TEST_DATA_DIR) / relative;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string ReadFixture(std::string_view relative) {
  return ReadFile(FixturePath(relative));
}

void WriteFile(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("mlsmells-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

pysource::SyntaxTree MustParse(std::string_view source) {
  auto result = pysource::ParseSource(source);
  if (!result.ok()) {
    ADD_FAILURE() << "syntax error at line " << result.error().line << ": "
                  << result.error().message << "\n" << source;
    return {};
  }
  return std::move(result).value();
}

pysource::NodeId FindNode(const pysource::SyntaxTree& tree,
                          pysource::NodeKind kind, std::string_view text) {
  for (size_t i = 0; i < tree.size(); ++i) {
    const auto id = static_cast<pysource::NodeId>(i);
    if (tree.kind(id) == kind && tree.Text(id) == text) return id;
  }
  return pysource::kNoNode;
}

}  // namespace mlsmells::testing
