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

#include "mlsmells/analysis/rationale.h"

#include <algorithm>
#include <cctype>
#include <set>

namespace mlsmells {
namespace {

size_t IndexOf(const std::vector<std::string>& v, std::string_view s) {
  return static_cast<size_t>(std::find(v.begin(), v.end(), s) - v.begin());
}

}  // namespace

const RationaleDictionary& DefaultRationaleDictionary() {
  static const RationaleDictionary kDictionary = {
      {"bug-fixing",
       {"fix", "bug", "issue", "crash", "fail", "defect", "error", "patch"}},
      {"enhancement", {"improv", "enhanc", "updat", "optimi", "clean", "upgrad"}},
      {"new-feature", {"add", "implement", "introduc", "support", "new"}},
      {"refactoring", {"refactor", "restructur", "rewrit", "renam", "mov"}},
  };
  return kDictionary;
}

std::string NormalizeWords(std::string_view text) {
  std::string out;
  bool gap = false;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      if (gap && !out.empty()) out += ' ';
      gap = false;
      out += static_cast<char>(std::tolower(u));
    } else {
      gap = true;
    }
  }
  return out;
}

RationaleTag TagRationale(std::string_view message,
                          const RationaleDictionary& dictionary) {
  RationaleTag r;
  std::set<std::string> tags;
  const std::string words = NormalizeWords(message);
  size_t pos = 0;
  while (pos < words.size()) {
    size_t end = words.find(' ', pos);
    if (end == std::string::npos) end = words.size();
    const std::string_view word = std::string_view(words).substr(pos, end - pos);
    pos = end + 1;
    for (const auto& [tag, stems] : dictionary) {
      for (const std::string& stem : stems) {
        if (word.starts_with(stem)) {
          tags.insert(tag);
          r.matches.push_back(tag + ":" + std::string(word));
          break;
        }
      }
    }
  }
  if (tags.empty()) tags.insert(std::string(kUnclassified));
  r.tags.assign(tags.begin(), tags.end());
  return r;
}

bool DetectSelfAdmission(std::string_view message, const SmellKind& kind,
                         const std::vector<std::string>& terms) {
  const std::string haystack = " " + NormalizeWords(message) + " ";
  std::vector<std::string> needles = {kind.id, kind.name};
  needles.insert(needles.end(), terms.begin(), terms.end());
  for (const std::string& n : needles) {
    const std::string needle = NormalizeWords(n);
    if (needle.empty()) continue;
    if (haystack.find(" " + needle + " ") != std::string::npos) return true;
  }
  return false;
}

Cooccurrence ComputeCooccurrence(const std::vector<IntroducingCommit>& commits,
                                 const RationaleDictionary& dictionary) {
  Cooccurrence c;
  for (const auto& [tag, stems] : dictionary) c.tags.push_back(tag);
  c.tags.emplace_back(kUnclassified);
  for (const SmellKind& k : Catalog()) c.kinds.push_back(k.id);
  c.cells.assign(c.tags.size(), std::vector<int>(c.kinds.size(), 0));
  c.commits_per_tag.assign(c.tags.size(), 0);
  c.commits_per_kind.assign(c.kinds.size(), 0);
  for (const IntroducingCommit& commit : commits) {
    const std::set<std::string> tags(commit.tags.begin(), commit.tags.end());
    const std::set<std::string> kinds(commit.kinds.begin(), commit.kinds.end());
    ++c.commits;
    for (const std::string& k : kinds) {
      const size_t ki = IndexOf(c.kinds, k);
      if (ki < c.kinds.size()) ++c.commits_per_kind[ki];
    }
    for (const std::string& t : tags) {
      const size_t ti = IndexOf(c.tags, t);
      if (ti == c.tags.size()) continue;
      ++c.commits_per_tag[ti];
      for (const std::string& k : kinds) {
        const size_t ki = IndexOf(c.kinds, k);
        if (ki < c.kinds.size()) ++c.cells[ti][ki];
      }
    }
  }
  return c;
}

}  // namespace mlsmells
