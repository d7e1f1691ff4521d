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

#ifndef MLSMELLS_LIFECYCLE_TRACKER_H_
#define MLSMELLS_LIFECYCLE_TRACKER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlsmells/histminer/history.h"
#include "mlsmells/lifecycle/commit_detection.h"

namespace mlsmells {

// 1 - Levenshtein(a', b') / max(|a'|, |b'|), where x' is x without
// whitespace. Two empty snippets are identical.
double SnippetSimilarity(std::string_view a, std::string_view b);

struct MatchOptions {
  double similarity_threshold = 0.8;
};

// Pairs instances of consecutive commits. A pair needs the same kind and
// file id plus an equal line or a snippet similarity at or above the
// threshold; file-scope kinds ignore the line. Candidates are taken greedily
// by similarity, then line distance. Returns (prev index, next index) pairs
// ordered by prev index.
std::vector<std::pair<size_t, size_t>> MatchInstances(
    const std::vector<TrackedInstance>& prev,
    const std::vector<TrackedInstance>& next, const MatchOptions& options = {});

enum class RemovalMode { kCodeChange, kFileDeletion, kOpen, kCensored };

std::string_view RemovalModeName(RemovalMode mode);
// Throws FormatError on an unknown name.
RemovalMode ParseRemovalMode(std::string_view name);

struct Anchor {
  int ordinal = 0;
  int line = 0;
  std::string path;
  std::string snippet;
  // Carried across a commit where the file could not be analyzed.
  bool interpolated = false;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

// One maximal contiguous run of presence.
struct InstanceTrace {
  std::string id;
  std::string kind;
  std::string file_id;
  std::vector<Anchor> anchors;
};

struct LifecycleRecord {
  std::string trace_id;
  std::string kind;
  std::string file_id;
  std::string introducing_sha;
  int introducing_ordinal = 0;
  int64_t introducing_timestamp = 0;
  // Empty while open.
  std::string removing_sha;
  RemovalMode removal_mode = RemovalMode::kOpen;
  int lifespan_commits = 0;
  double lifespan_days = 0;

  bool closed() const {
    return removal_mode == RemovalMode::kCodeChange ||
           removal_mode == RemovalMode::kFileDeletion;
  }
  friend bool operator==(const LifecycleRecord&,
                         const LifecycleRecord&) = default;
};

struct Lifecycle {
  std::vector<InstanceTrace> traces;
  // Parallel to `traces`.
  std::vector<LifecycleRecord> records;
};

// file-deletion when the instance's file id is deleted by the removing
// commit, code-change otherwise.
RemovalMode ClassifyRemoval(const LifecycleRecord& record,
                            const CommitDetection& removing);

// Walks the per-commit sets in ordinal order and closes a trace at the first
// analyzed commit that lacks it. Trace ids are "t1", "t2", ... in order of
// introduction.
Lifecycle FindTransitions(const History& history,
                          const std::vector<CommitDetection>& detections,
                          const MatchOptions& options = {});

}  // namespace mlsmells

#endif  // MLSMELLS_LIFECYCLE_TRACKER_H_
