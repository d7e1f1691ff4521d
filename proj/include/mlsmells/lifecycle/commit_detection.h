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

#ifndef MLSMELLS_LIFECYCLE_COMMIT_DETECTION_H_
#define MLSMELLS_LIFECYCLE_COMMIT_DETECTION_H_

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mlsmells/detectors/config.h"
#include "mlsmells/detectors/detector.h"
#include "mlsmells/detectors/snapshot.h"
#include "mlsmells/histminer/history.h"

namespace mlsmells {

// Detection result for one blob, independent of the path it lives at.
struct BlobResult {
  bool ml = false;
  int loc = 0;
  std::optional<pysource::SyntaxError> parse_error;
  // `file` and `commit` are left empty.
  std::vector<SmellInstance> instances;
  std::vector<std::string> diagnostics;

  friend bool operator==(const BlobResult&, const BlobResult&) = default;
};

// Results keyed by (blob sha, rule set hash). Always memoizes in memory;
// with a directory it also persists one JSON file per key, so an
// interrupted run resumes where it stopped. Thread-safe.
class DetectionCache {
 public:
  explicit DetectionCache(std::filesystem::path dir = {});

  // $MLSMELLS_CACHE_DIR, or empty (memory only) when unset.
  static std::filesystem::path DirFromEnvironment();

  std::optional<BlobResult> Find(const std::string& blob,
                                 const std::string& rules);
  void Store(const std::string& blob, const std::string& rules,
             const BlobResult& result);

  int hits() const { return hits_; }
  int misses() const { return misses_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path PathFor(const std::string& blob,
                                const std::string& rules) const;

  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::pair<std::string, std::string>, BlobResult> memory_;
  std::atomic<int> hits_{0};
  std::atomic<int> misses_{0};
};

// A detected instance placed in the repository's file identity space.
struct TrackedInstance {
  std::string kind;
  std::string file_id;
  std::string path;
  int line = 0;
  std::string snippet;

  friend bool operator==(const TrackedInstance&,
                         const TrackedInstance&) = default;
  friend auto operator<=>(const TrackedInstance&,
                          const TrackedInstance&) = default;
};

struct CommitDetection {
  std::string sha;
  int ordinal = 0;
  // False when the snapshot could not be materialized at all.
  bool analyzable = true;
  // Files present but not analyzable here (syntax errors); their traces are
  // interpolated.
  std::set<std::string> unanalyzable_files;
  // Ids deleted by this commit.
  std::set<std::string> deleted_files;
  // Sorted by (file id, line, kind).
  std::vector<TrackedInstance> instances;
  int ml_files = 0;
  int64_t loc = 0;
  std::vector<std::string> diagnostics;
};

struct CommitDetectionOptions {
  int workers = 0;  // <= 0: all cores
  DetectionCache* cache = nullptr;  // null: a private in-memory cache
};

// (path, blob sha) of every regular `.py` file in the commit's tree.
std::vector<std::pair<std::string, std::string>> ListPythonBlobs(
    const std::filesystem::path& repo, const std::string& sha);

// Runs detection on every commit of `history`. A commit whose tree cannot be
// read is marked unanalyzable and logged; the walk continues.
std::vector<CommitDetection> DetectCommits(
    const std::filesystem::path& repo, const History& history,
    const DetectorConfig& config, const CommitDetectionOptions& options = {});

// Snapshot report of commit `sha`, read from git objects rather than the
// working tree. Throws RepoError when the tree cannot be listed.
DetectionReport DetectCommitSnapshot(
    const std::filesystem::path& repo, const std::string& sha,
    const DetectorConfig& config, const std::string& project = "",
    const CommitDetectionOptions& options = {});

}  // namespace mlsmells

#endif  // MLSMELLS_LIFECYCLE_COMMIT_DETECTION_H_
