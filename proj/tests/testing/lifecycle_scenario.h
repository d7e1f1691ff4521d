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

#ifndef MLSMELLS_TESTING_LIFECYCLE_SCENARIO_H_
#define MLSMELLS_TESTING_LIFECYCLE_SCENARIO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "testing/synthetic_repo.h"

namespace mlsmells::testing {

// Ground truth for one smell instance, by commit index.
struct ExpectedTrace {
  std::string kind;
  std::string path;  // at introduction
  int introducing = 0;
  int removing = -1;  // -1 while open at HEAD
  bool file_deletion = false;

  friend bool operator==(const ExpectedTrace&, const ExpectedTrace&) = default;
  friend auto operator<=>(const ExpectedTrace&,
                          const ExpectedTrace&) = default;
};

struct LifecycleScenario {
  int commits = 0;
  std::vector<ExpectedTrace> traces;
  std::vector<std::string> events;  // one per commit, for failure messages
};

// Scripts a random history of `commits` commits (one event each: smell
// insert or removal, line shift, rename, file addition or deletion) into
// `repo` and records which smell instance lives where. Smell lines carry
// random identifiers so unrelated snippets are never similar.
LifecycleScenario BuildLifecycleScenario(RepoBuilder& repo, uint32_t seed,
                                         int commits);

// One lifecycle.csv row as the scenario predicts it.
struct ExpectedRow {
  std::string kind;
  std::string introducing_sha;
  std::string removing_sha;  // empty while open or censored
  std::string removal_mode;
  int lifespan_commits = 0;

  friend bool operator==(const ExpectedRow&, const ExpectedRow&) = default;
  friend auto operator<=>(const ExpectedRow&, const ExpectedRow&) = default;
};

// Ground-truth rows for `scenario`, sorted. Open instances whose
// introduction plus the median removal time (days, over closed instances of
// the same kind) lies beyond HEAD are "censored". Computed from the
// scenario and commit timestamps only.
std::vector<ExpectedRow> ExpectedLifecycleRows(
    const LifecycleScenario& scenario, const RepoBuilder& repo);

// Plain dynamic-programming edit distance.
int EditDistance(const std::string& a, const std::string& b);

}  // namespace mlsmells::testing

#endif  // MLSMELLS_TESTING_LIFECYCLE_SCENARIO_H_
