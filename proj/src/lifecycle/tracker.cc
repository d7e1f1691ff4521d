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

#include "mlsmells/lifecycle/tracker.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <tuple>

#include "mlsmells/detectors/catalog.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

constexpr double kSecondsPerDay = 86400.0;

std::string StripSpace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

bool IsFileScope(std::string_view kind) {
  const SmellKind* k = FindKind(kind);
  return k != nullptr && k->scope == SmellScope::kFile;
}

struct OpenTrace {
  size_t index;  // into Lifecycle::traces
  TrackedInstance last;
};

}  // namespace

double SnippetSimilarity(std::string_view a, std::string_view b) {
  const std::string x = StripSpace(a);
  const std::string y = StripSpace(b);
  if (x.empty() && y.empty()) return 1.0;
  std::vector<size_t> row(y.size() + 1);
  for (size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= x.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= y.size(); ++j) {
      const size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (x[i - 1] == y[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return 1.0 - static_cast<double>(row[y.size()]) /
                   static_cast<double>(std::max(x.size(), y.size()));
}

std::vector<std::pair<size_t, size_t>> MatchInstances(
    const std::vector<TrackedInstance>& prev,
    const std::vector<TrackedInstance>& next, const MatchOptions& options) {
  struct Candidate {
    double similarity;
    int distance;
    size_t i;
    size_t j;
  };
  std::vector<Candidate> candidates;
  for (size_t i = 0; i < prev.size(); ++i) {
    for (size_t j = 0; j < next.size(); ++j) {
      const TrackedInstance& a = prev[i];
      const TrackedInstance& b = next[j];
      if (a.kind != b.kind || a.file_id != b.file_id) continue;
      if (IsFileScope(a.kind)) {
        candidates.push_back({1.0, 0, i, j});
        continue;
      }
      const double sim = SnippetSimilarity(a.snippet, b.snippet);
      if (a.line != b.line && sim < options.similarity_threshold) continue;
      candidates.push_back({sim, std::abs(a.line - b.line), i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(b.similarity, a.distance, a.i, a.j) <
                     std::tie(a.similarity, b.distance, b.i, b.j);
            });
  std::vector<bool> used_prev(prev.size()), used_next(next.size());
  std::vector<std::pair<size_t, size_t>> pairs;
  for (const Candidate& c : candidates) {
    if (used_prev[c.i] || used_next[c.j]) continue;
    used_prev[c.i] = used_next[c.j] = true;
    pairs.emplace_back(c.i, c.j);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::string_view RemovalModeName(RemovalMode mode) {
  switch (mode) {
    case RemovalMode::kCodeChange:
      return "code-change";
    case RemovalMode::kFileDeletion:
      return "file-deletion";
    case RemovalMode::kOpen:
      return "open";
    case RemovalMode::kCensored:
      return "censored";
  }
  return "open";
}

RemovalMode ParseRemovalMode(std::string_view name) {
  for (RemovalMode m : {RemovalMode::kCodeChange, RemovalMode::kFileDeletion,
                        RemovalMode::kOpen, RemovalMode::kCensored}) {
    if (RemovalModeName(m) == name) return m;
  }
  throw FormatError("unknown removal mode '" + std::string(name) + "'");
}

RemovalMode ClassifyRemoval(const LifecycleRecord& record,
                            const CommitDetection& removing) {
  return removing.deleted_files.contains(record.file_id)
             ? RemovalMode::kFileDeletion
             : RemovalMode::kCodeChange;
}

Lifecycle FindTransitions(const History& history,
                          const std::vector<CommitDetection>& detections,
                          const MatchOptions& options) {
  Lifecycle out;
  if (history.commits.empty()) return out;
  const CommitRecord& head = history.commits.back();
  std::vector<OpenTrace> open;

  auto close = [&](const OpenTrace& t, const CommitDetection& at) {
    LifecycleRecord& r = out.records[t.index];
    const CommitRecord& c = history.commits[at.ordinal];
    r.removing_sha = c.sha;
    r.removal_mode = ClassifyRemoval(r, at);
    r.lifespan_commits = c.ordinal - r.introducing_ordinal;
    r.lifespan_days = std::max(
        0.0, static_cast<double>(c.timestamp - r.introducing_timestamp) /
                 kSecondsPerDay);
  };

  for (const CommitDetection& d : detections) {
    const CommitRecord& commit = history.commits.at(d.ordinal);
    // Traces whose file could not be analyzed here are carried unchanged.
    std::vector<OpenTrace> carried;
    std::vector<OpenTrace> candidates;
    for (OpenTrace& t : open) {
      const bool blind = !d.analyzable ||
                         d.unanalyzable_files.contains(t.last.file_id);
      (blind ? carried : candidates).push_back(std::move(t));
    }
    open.clear();
    for (OpenTrace& t : carried) {
      out.traces[t.index].anchors.push_back(
          {d.ordinal, t.last.line, t.last.path, t.last.snippet, true});
      open.push_back(std::move(t));
    }
    if (!d.analyzable) continue;

    std::vector<TrackedInstance> prev;
    for (const OpenTrace& t : candidates) prev.push_back(t.last);
    const auto pairs = MatchInstances(prev, d.instances, options);
    std::vector<bool> matched_prev(prev.size()), matched_next(
                                                     d.instances.size());
    for (auto [i, j] : pairs) {
      matched_prev[i] = matched_next[j] = true;
      OpenTrace t = candidates[i];
      t.last = d.instances[j];
      out.traces[t.index].anchors.push_back({d.ordinal, t.last.line,
                                             t.last.path, t.last.snippet,
                                             false});
      open.push_back(std::move(t));
    }
    for (size_t i = 0; i < prev.size(); ++i) {
      if (!matched_prev[i]) close(candidates[i], d);
    }
    for (size_t j = 0; j < d.instances.size(); ++j) {
      if (matched_next[j]) continue;
      const TrackedInstance& s = d.instances[j];
      const size_t index = out.traces.size();
      InstanceTrace trace;
      trace.id = "t" + std::to_string(index + 1);
      trace.kind = s.kind;
      trace.file_id = s.file_id;
      trace.anchors.push_back({d.ordinal, s.line, s.path, s.snippet, false});
      out.traces.push_back(std::move(trace));
      LifecycleRecord r;
      r.trace_id = out.traces.back().id;
      r.kind = s.kind;
      r.file_id = s.file_id;
      r.introducing_sha = commit.sha;
      r.introducing_ordinal = commit.ordinal;
      r.introducing_timestamp = commit.timestamp;
      out.records.push_back(std::move(r));
      open.push_back({index, s});
    }
  }
  for (const OpenTrace& t : open) {
    LifecycleRecord& r = out.records[t.index];
    r.removal_mode = RemovalMode::kOpen;
    r.lifespan_commits = head.ordinal - r.introducing_ordinal;
    r.lifespan_days = std::max(
        0.0, static_cast<double>(head.timestamp - r.introducing_timestamp) /
                 kSecondsPerDay);
  }
  return out;
}

}  // namespace mlsmells
