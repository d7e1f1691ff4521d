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

#ifndef MLSMELLS_ANALYSIS_RATIONALE_H_
#define MLSMELLS_ANALYSIS_RATIONALE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mlsmells/detectors/catalog.h"

namespace mlsmells {

// Tag -> keyword stems. A word of the message matches a stem it starts with.
using RationaleDictionary = std::map<std::string, std::vector<std::string>>;

inline constexpr std::string_view kUnclassified = "unclassified";

// bug-fixing, enhancement, new-feature and refactoring.
const RationaleDictionary& DefaultRationaleDictionary();

struct RationaleTag {
  // Sorted; {"unclassified"} when nothing matched.
  std::vector<std::string> tags;
  // "tag:word" for every match, in message order.
  std::vector<std::string> matches;
};

RationaleTag TagRationale(
    std::string_view message,
    const RationaleDictionary& dictionary = DefaultRationaleDictionary());

// Lowercase, every run of non-alphanumerics collapsed to one space.
std::string NormalizeWords(std::string_view text);

// True when the message mentions the kind's id, its name or one of `terms`,
// compared as whole normalized word sequences.
bool DetectSelfAdmission(std::string_view message, const SmellKind& kind,
                         const std::vector<std::string>& terms = {});

struct IntroducingCommit {
  std::vector<std::string> tags;
  std::vector<std::string> kinds;  // each counted once per commit
};

struct Cooccurrence {
  std::vector<std::string> tags;
  std::vector<std::string> kinds;
  // [tag][kind]: introducing commits tagged `tag` that introduce `kind`.
  std::vector<std::vector<int>> cells;
  std::vector<int> commits_per_tag;
  std::vector<int> commits_per_kind;
  int commits = 0;
};

// Rows are the dictionary tags plus unclassified, columns the catalog kinds.
Cooccurrence ComputeCooccurrence(
    const std::vector<IntroducingCommit>& commits,
    const RationaleDictionary& dictionary = DefaultRationaleDictionary());

}  // namespace mlsmells

#endif  // MLSMELLS_ANALYSIS_RATIONALE_H_
