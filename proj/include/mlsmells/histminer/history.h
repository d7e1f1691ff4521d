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

#ifndef MLSMELLS_HISTMINER_HISTORY_H_
#define MLSMELLS_HISTMINER_HISTORY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mlsmells {

struct CommitRecord {
  std::string sha;
  std::vector<std::string> parents;
  // Author date, seconds since the epoch (UTC).
  int64_t timestamp = 0;
  std::string message;
  int files_total = 0;
  int files_added = 0;
  int files_removed = 0;
  int ordinal = 0;
  bool is_release = false;

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

// One entry of a commit's diff against its first parent. `status` is the
// git letter: A, D, M, T or R (renames carry the old path).
struct FileChange {
  char status = 'M';
  std::string path;
  std::string old_path;

  friend bool operator==(const FileChange&, const FileChange&) = default;
};

struct HistoryOptions {
  // Minimum content similarity, in percent, for git to report a rename.
  int rename_threshold = 60;
  // ECMAScript regex searched in tag names; empty accepts every tag.
  std::string release_tag_pattern;
};

// First-parent history from the root to HEAD. `changes[i]` is the diff of
// `commits[i]` against its first parent (everything added for the root).
struct History {
  std::vector<CommitRecord> commits;
  std::vector<std::vector<FileChange>> changes;
};

// Throws RepoError for a missing or corrupt repository or one without
// commits.
History WalkHistory(const std::filesystem::path& repo,
                    const HistoryOptions& options = {});

// Commits pointed to by a tag (annotated tags are peeled).
std::set<std::string> DetectReleases(const std::filesystem::path& repo,
                                     std::string_view tag_pattern = "");

// Stable file ids ("f1", "f2", ...) across renames. Ids are minted in order
// of first appearance, so they are stable under re-runs and under appending
// commits.
struct FileAlias {
  std::string sha;
  std::string path;

  friend bool operator==(const FileAlias&, const FileAlias&) = default;
};

class FileIdentityTracker {
 public:
  // Deleted ids, reported by ApplyCommit, so callers can classify removals.
  struct Step {
    std::vector<std::string> deleted;
    std::vector<std::string> added;
    std::vector<std::string> renamed;
  };

  Step ApplyCommit(const std::string& sha,
                   const std::vector<FileChange>& changes);

  // Id of the file at `path` in the current commit, or empty.
  std::string IdOf(std::string_view path) const;
  const std::map<std::string, std::string, std::less<>>& live() const {
    return live_;
  }
  // Every alias an id has had, in commit order.
  const std::map<std::string, std::vector<FileAlias>>& aliases() const {
    return aliases_;
  }

 private:
  std::string Mint();

  int next_ = 1;
  std::map<std::string, std::string, std::less<>> live_;  // path -> id
  std::map<std::string, std::vector<FileAlias>> aliases_;
};

using FileIdentityMap = std::map<std::string, std::vector<FileAlias>>;

FileIdentityMap TrackFileIdentity(const History& history);

// "2024-01-02T03:04:05Z".
std::string FormatTimestamp(int64_t seconds);
// Accepts the FormatTimestamp layout; throws FormatError otherwise.
int64_t ParseTimestamp(std::string_view text);

// commits.csv: sha,parents,timestamp,ordinal,files_total,files_added,
// files_removed,is_release,message. Parents are space-separated; the message
// is a JSON string literal (then CSV-quoted like any other field).
std::string CommitsToCsv(const std::vector<CommitRecord>& commits);
std::vector<CommitRecord> CommitsFromCsv(std::string_view text);

}  // namespace mlsmells

#endif  // MLSMELLS_HISTMINER_HISTORY_H_
