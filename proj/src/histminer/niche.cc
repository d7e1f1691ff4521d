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

#include "mlsmells/histminer/niche.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "fmt/core.h"
#include "mlsmells/util/csv.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(c));
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<int64_t> ParseCount(std::string_view s) {
  s = Trim(s);
  std::string digits;
  for (char c : s) {
    if (c != ',' && c != '_') digits += c;
  }
  int64_t v = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || p != digits.data() + digits.size() ||
      v < 0) {
    return std::nullopt;
  }
  return v;
}

std::optional<bool> ParseFlag(std::string_view s) {
  const std::string v = Lower(Trim(s));
  if (v == "true" || v == "1" || v == "yes" || v == "y") return true;
  if (v == "false" || v == "0" || v == "no" || v == "n") return false;
  return std::nullopt;
}

}  // namespace

std::string_view SizeGroupName(SizeGroup group) {
  switch (group) {
    case SizeGroup::kSmall:
      return "small";
    case SizeGroup::kMedium:
      return "medium";
    case SizeGroup::kLarge:
      return "large";
    case SizeGroup::kUnassigned:
      break;
  }
  return "unassigned";
}

NicheCatalog ParseNicheCatalog(std::string_view csv) {
  const std::vector<CsvRow> rows = ParseCsv(csv);
  if (rows.empty()) throw FormatError("catalog: missing header");
  std::map<std::string, size_t> column;
  for (size_t i = 0; i < rows[0].fields.size(); ++i) {
    column.emplace(Lower(Trim(rows[0].fields[i])), i);
  }
  static constexpr std::string_view kRequired[] = {"name",    "url", "stars",
                                                   "commits", "loc", "ci"};
  for (std::string_view name : kRequired) {
    if (!column.contains(std::string(name))) {
      throw FormatError(
          fmt::format("catalog: missing required column '{}'", name));
    }
  }
  auto at = [&](const CsvRow& row, std::string_view name) -> std::string_view {
    const size_t i = column.at(std::string(name));
    return i < row.fields.size() ? std::string_view(row.fields[i])
                                 : std::string_view();
  };

  NicheCatalog out;
  for (size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    const int number = static_cast<int>(r) + 1;
    auto skip = [&](std::string_view why) {
      out.diagnostics.push_back(fmt::format("row {}: {}", number, why));
    };
    if (row.fields.size() < rows[0].fields.size()) {
      skip(fmt::format("expected {} fields, found {}", rows[0].fields.size(),
                       row.fields.size()));
      continue;
    }
    ProjectRecord p;
    p.name = std::string(Trim(at(row, "name")));
    p.url = std::string(Trim(at(row, "url")));
    if (p.name.empty()) {
      skip("empty name");
      continue;
    }
    const auto stars = ParseCount(at(row, "stars"));
    const auto commits = ParseCount(at(row, "commits"));
    const auto loc = ParseCount(at(row, "loc"));
    const auto ci = ParseFlag(at(row, "ci"));
    if (!stars) {
      skip(fmt::format("bad stars '{}'", at(row, "stars")));
      continue;
    }
    if (!commits) {
      skip(fmt::format("bad commits '{}'", at(row, "commits")));
      continue;
    }
    if (!loc) {
      skip(fmt::format("bad loc '{}'", at(row, "loc")));
      continue;
    }
    if (!ci) {
      skip(fmt::format("bad ci '{}'", at(row, "ci")));
      continue;
    }
    if (*stars < kNicheMinimum || *commits < kNicheMinimum) {
      skip(fmt::format("below the {} stars/commits floor", kNicheMinimum));
      continue;
    }
    p.stars = *stars;
    p.commit_count = *commits;
    p.loc = *loc;
    p.has_ci = *ci;
    out.projects.push_back(std::move(p));
  }
  return out;
}

NicheCatalog LoadNicheCatalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseNicheCatalog(ss.str());
}

}  // namespace mlsmells
