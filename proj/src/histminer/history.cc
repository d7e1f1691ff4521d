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

#include "mlsmells/histminer/history.h"

#include <algorithm>
#include <ctime>
#include <regex>

#include "fmt/chrono.h"
#include "fmt/core.h"
#include "json.hpp"
#include "mlsmells/util/csv.h"
#include "mlsmells/util/errors.h"
#include "mlsmells/util/git.h"

namespace mlsmells {
namespace {

constexpr char kCommitStart = '\x01';
constexpr char kHeaderEnd = '\x02';

std::vector<std::string_view> SplitNul(std::string_view s) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (start < s.size()) {
    size_t nul = s.find('\0', start);
    if (nul == std::string_view::npos) nul = s.size();
    out.push_back(s.substr(start, nul - start));
    start = nul + 1;
  }
  return out;
}

std::vector<std::string> SplitSpaces(std::string_view s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start < s.size()) {
    size_t sp = s.find(' ', start);
    if (sp == std::string_view::npos) sp = s.size();
    if (sp > start) out.emplace_back(s.substr(start, sp - start));
    start = sp + 1;
  }
  return out;
}

std::vector<FileChange> ParseNameStatus(std::string_view body) {
  while (!body.empty() && (body.front() == '\0' || body.front() == '\n')) {
    body.remove_prefix(1);
  }
  std::vector<FileChange> changes;
  const std::vector<std::string_view> tok = SplitNul(body);
  for (size_t i = 0; i < tok.size();) {
    std::string_view status = tok[i];
    while (!status.empty() && status.front() == '\n') status.remove_prefix(1);
    if (status.empty()) {
      ++i;
      continue;
    }
    FileChange c;
    c.status = status[0];
    if (c.status == 'R' || c.status == 'C') {
      if (i + 2 >= tok.size()) throw RepoError("truncated git log output");
      c.old_path = std::string(tok[i + 1]);
      c.path = std::string(tok[i + 2]);
      // A copy leaves the source in place: treat the destination as new.
      if (c.status == 'C') {
        c.status = 'A';
        c.old_path.clear();
      }
      i += 3;
    } else {
      if (i + 1 >= tok.size()) throw RepoError("truncated git log output");
      c.path = std::string(tok[i + 1]);
      i += 2;
    }
    changes.push_back(std::move(c));
  }
  return changes;
}

}  // namespace

History WalkHistory(const std::filesystem::path& repo,
                    const HistoryOptions& options) {
  CheckRepository(repo);
  try {
    Git(repo, {"rev-parse", "--verify", "-q", "HEAD^{commit}"});
  } catch (const RepoError&) {
    throw RepoError("repository has no commits: " + repo.string());
  }
  const std::string log =
      Git(repo, {"log", "--first-parent", "--reverse",
                 "--diff-merges=first-parent", "--root",
                 fmt::format("-M{}%", options.rename_threshold),
                 "--name-status", "-z", "--no-color",
                 "--format=%x01%H%x00%P%x00%at%x00%B%x02", "HEAD"});
  const std::set<std::string> releases =
      DetectReleases(repo, options.release_tag_pattern);

  History h;
  int total = 0;
  size_t pos = log.find(kCommitStart);
  while (pos != std::string::npos) {
    size_t next = log.find(kCommitStart, pos + 1);
    const std::string_view chunk = std::string_view(log).substr(
        pos + 1, (next == std::string::npos ? log.size() : next) - pos - 1);
    pos = next;
    const size_t header_end = chunk.find(kHeaderEnd);
    if (header_end == std::string_view::npos) {
      throw RepoError("unexpected git log output");
    }
    const std::string_view header = chunk.substr(0, header_end);
    const size_t a = header.find('\0');
    const size_t b = header.find('\0', a + 1);
    const size_t c = header.find('\0', b + 1);
    if (a == std::string_view::npos || b == std::string_view::npos ||
        c == std::string_view::npos) {
      throw RepoError("unexpected git log header");
    }
    CommitRecord r;
    r.sha = std::string(header.substr(0, a));
    r.parents = SplitSpaces(header.substr(a + 1, b - a - 1));
    r.timestamp = std::stoll(std::string(header.substr(b + 1, c - b - 1)));
    std::string_view message = header.substr(c + 1);
    while (!message.empty() &&
           (message.back() == '\n' || message.back() == '\r')) {
      message.remove_suffix(1);
    }
    r.message = std::string(message);
    std::vector<FileChange> changes =
        ParseNameStatus(chunk.substr(header_end + 1));
    for (const FileChange& ch : changes) {
      if (ch.status == 'A') ++r.files_added;
      if (ch.status == 'D') ++r.files_removed;
    }
    total += r.files_added - r.files_removed;
    r.files_total = total;
    r.ordinal = static_cast<int>(h.commits.size());
    r.is_release = releases.contains(r.sha);
    h.commits.push_back(std::move(r));
    h.changes.push_back(std::move(changes));
  }
  if (h.commits.empty()) {
    throw RepoError("repository has no commits: " + repo.string());
  }
  return h;
}

std::set<std::string> DetectReleases(const std::filesystem::path& repo,
                                     std::string_view tag_pattern) {
  const std::string out =
      Git(repo, {"for-each-ref",
                 "--format=%(objectname)%00%(*objectname)%00%(refname:short)",
                 "refs/tags"});
  std::optional<std::regex> filter;
  if (!tag_pattern.empty()) {
    try {
      filter.emplace(std::string(tag_pattern));
    } catch (const std::regex_error& e) {
      throw FormatError(fmt::format("bad tag pattern '{}': {}", tag_pattern,
                                    e.what()));
    }
  }
  std::set<std::string> shas;
  size_t start = 0;
  while (start < out.size()) {
    size_t nl = out.find('\n', start);
    if (nl == std::string::npos) nl = out.size();
    const std::string_view line = std::string_view(out).substr(start, nl - start);
    start = nl + 1;
    const auto fields = SplitNul(line);
    if (fields.size() < 3) continue;
    if (filter && !std::regex_search(std::string(fields[2]), *filter)) continue;
    shas.emplace(fields[1].empty() ? fields[0] : fields[1]);
  }
  return shas;
}

std::string FileIdentityTracker::Mint() {
  return fmt::format("f{}", next_++);
}

FileIdentityTracker::Step FileIdentityTracker::ApplyCommit(
    const std::string& sha, const std::vector<FileChange>& changes) {
  Step step;
  // Deletions and rename sources free their paths before anything else takes
  // them, so "R a->b" plus "A a" in one commit yields two distinct ids.
  for (const FileChange& c : changes) {
    if (c.status != 'D') continue;
    auto it = live_.find(c.path);
    if (it == live_.end()) continue;
    step.deleted.push_back(it->second);
    live_.erase(it);
  }
  std::vector<std::pair<const FileChange*, std::string>> moved;
  for (const FileChange& c : changes) {
    if (c.status != 'R') continue;
    auto it = live_.find(c.old_path);
    std::string id;
    if (it != live_.end()) {
      id = it->second;
      live_.erase(it);
    }
    moved.emplace_back(&c, std::move(id));
  }
  auto place = [&](const std::string& path, const std::string& id) {
    auto it = live_.find(path);
    if (it != live_.end() && it->second != id) {
      // Overwriting a live file retires its id; ids never merge.
      step.deleted.push_back(it->second);
    }
    live_[path] = id;
    aliases_[id].push_back({sha, path});
  };
  for (auto& [c, id] : moved) {
    if (id.empty()) {
      id = Mint();
      step.added.push_back(id);
    } else {
      step.renamed.push_back(id);
    }
    place(c->path, id);
  }
  for (const FileChange& c : changes) {
    if (c.status == 'A' || ((c.status == 'M' || c.status == 'T') &&
                            !live_.contains(c.path))) {
      const std::string id = Mint();
      step.added.push_back(id);
      place(c.path, id);
    }
  }
  return step;
}

std::string FileIdentityTracker::IdOf(std::string_view path) const {
  auto it = live_.find(path);
  return it == live_.end() ? std::string() : it->second;
}

FileIdentityMap TrackFileIdentity(const History& history) {
  FileIdentityTracker tracker;
  for (size_t i = 0; i < history.commits.size(); ++i) {
    tracker.ApplyCommit(history.commits[i].sha, history.changes[i]);
  }
  return tracker.aliases();
}

std::string FormatTimestamp(int64_t seconds) {
  const std::time_t t = static_cast<std::time_t>(seconds);
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(t));
}

int64_t ParseTimestamp(std::string_view text) {
  std::tm tm{};
  int y, mo, d, h, mi, s;
  char z = 0;
  if (std::sscanf(std::string(text).c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y,
                  &mo, &d, &h, &mi, &s, &z) != 7 ||
      z != 'Z') {
    throw FormatError(fmt::format("bad timestamp '{}'", text));
  }
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  return static_cast<int64_t>(timegm(&tm));
}

std::string CommitsToCsv(const std::vector<CommitRecord>& commits) {
  std::string out = CsvLine({"sha", "parents", "timestamp", "ordinal",
                             "files_total", "files_added", "files_removed",
                             "is_release", "message"});
  for (const CommitRecord& c : commits) {
    std::string parents;
    for (size_t i = 0; i < c.parents.size(); ++i) {
      if (i > 0) parents += ' ';
      parents += c.parents[i];
    }
    out += CsvLine({c.sha, parents, FormatTimestamp(c.timestamp),
                    std::to_string(c.ordinal), std::to_string(c.files_total),
                    std::to_string(c.files_added),
                    std::to_string(c.files_removed),
                    c.is_release ? "true" : "false",
                    nlohmann::json(c.message).dump(
                        -1, ' ', false, nlohmann::json::error_handler_t::replace)});
  }
  return out;
}

std::vector<CommitRecord> CommitsFromCsv(std::string_view text) {
  const std::vector<CsvRow> rows = ParseCsv(text);
  if (rows.empty()) throw FormatError("commits.csv: missing header");
  const std::vector<std::string> header = {
      "sha",         "parents",       "timestamp",  "ordinal", "files_total",
      "files_added", "files_removed", "is_release", "message"};
  if (rows[0].fields != header) {
    throw FormatError("commits.csv: unexpected header");
  }
  std::vector<CommitRecord> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    if (f.size() != header.size()) {
      throw FormatError(
          fmt::format("commits.csv line {}: expected 9 fields", rows[i].line));
    }
    try {
      CommitRecord c;
      c.sha = f[0];
      c.parents = SplitSpaces(f[1]);
      c.timestamp = ParseTimestamp(f[2]);
      c.ordinal = std::stoi(f[3]);
      c.files_total = std::stoi(f[4]);
      c.files_added = std::stoi(f[5]);
      c.files_removed = std::stoi(f[6]);
      c.is_release = f[7] == "true";
      c.message = nlohmann::json::parse(f[8]).get<std::string>();
      out.push_back(std::move(c));
    } catch (const std::exception& e) {
      throw FormatError(
          fmt::format("commits.csv line {}: {}", rows[i].line, e.what()));
    }
  }
  return out;
}

}  // namespace mlsmells
