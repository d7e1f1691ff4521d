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

#ifndef MLSMELLS_TESTING_SYNTHETIC_REPO_H_
#define MLSMELLS_TESTING_SYNTHETIC_REPO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mlsmells::testing {

// Builds a git repository through `git fast-import` with fully controlled
// author dates. Every mutation of history is written immediately. Each commit records the complete tree of its branch, so the
// builder's in-memory file map is the ground truth for every commit.
class RepoBuilder {
 public:
  using Tree = std::map<std::string, std::string>;

  // Runs `git init` in `dir` (created if needed).
  explicit RepoBuilder(std::filesystem::path dir);

  RepoBuilder& Write(const std::string& path, std::string content);
  RepoBuilder& Remove(const std::string& path);
  RepoBuilder& Rename(const std::string& from, const std::string& to);

  // Commits the current branch's tree; returns the commit index. A zero
  // timestamp picks one day after the previous commit.
  int Commit(std::string_view message, int64_t timestamp = 0);
  // Merge commit on the current branch whose second parent is the tip of
  // `other`; the tree becomes the union (current branch wins on conflicts).
  int Merge(const std::string& other, std::string_view message,
            int64_t timestamp = 0);

  // Starts `name` at the current branch tip (or switches to it if present).
  RepoBuilder& Checkout(const std::string& name);
  RepoBuilder& Tag(const std::string& name, int commit, bool annotated = false);

  std::string Sha(int index) const { return shas_.at(index); }
  const Tree& tree() const { return branches_.at(branch_).tree; }
  const Tree& TreeAt(int index) const { return trees_.at(index); }
  int64_t TimestampAt(int index) const { return times_.at(index); }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct Branch {
    Tree tree;
    int tip = -1;
  };
  int Emit(std::string_view message, int64_t timestamp, int merge_parent);
  // Feeds the queued stream to fast-import and refreshes the sha table.
  void Flush();

  std::filesystem::path dir_;
  std::string stream_;
  std::map<std::string, Branch> branches_;
  std::string branch_ = "main";
  std::vector<Tree> trees_;
  std::vector<int64_t> times_;
  std::vector<std::string> shas_;
};

// Runs git with a fixed identity; throws std::runtime_error on failure.
std::string RunGit(const std::filesystem::path& repo,
                   const std::vector<std::string>& args,
                   const std::string& input = "");

}  // namespace mlsmells::testing

#endif  // MLSMELLS_TESTING_SYNTHETIC_REPO_H_
