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

#ifndef MLSMELLS_HISTMINER_NICHE_H_
#define MLSMELLS_HISTMINER_NICHE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mlsmells {

enum class SizeGroup { kUnassigned, kSmall, kMedium, kLarge };

std::string_view SizeGroupName(SizeGroup group);

struct ProjectRecord {
  std::string name;
  std::string url;
  int64_t stars = 0;
  int64_t commit_count = 0;
  int64_t loc = 0;
  bool has_ci = false;
  SizeGroup size_group = SizeGroup::kUnassigned;

  friend bool operator==(const ProjectRecord&, const ProjectRecord&) = default;
};

struct NicheCatalog {
  std::vector<ProjectRecord> projects;
  // "row N: reason" for every skipped row; N counts the header as row 1.
  std::vector<std::string> diagnostics;
};

// Dataset construction floor for stars and commits.
inline constexpr int64_t kNicheMinimum = 100;

// Requires the columns name, url, stars, commits, loc, ci (any order, extra
// columns ignored). Throws FormatError when one is missing.
NicheCatalog ParseNicheCatalog(std::string_view csv);
NicheCatalog LoadNicheCatalog(const std::string& path);

}  // namespace mlsmells

#endif  // MLSMELLS_HISTMINER_NICHE_H_
