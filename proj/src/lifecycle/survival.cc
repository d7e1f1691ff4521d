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

#include "mlsmells/lifecycle/survival.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "fmt/core.h"
#include "mlsmells/detectors/catalog.h"
#include "mlsmells/util/csv.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

constexpr double kSecondsPerDay = 86400.0;

std::optional<double> Mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

std::string Optional(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

std::optional<double> Median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

CensoringResult ApplyCensoring(std::vector<LifecycleRecord> records,
                               int64_t head_timestamp) {
  CensoringResult out;
  std::map<std::string, std::vector<double>> closed_days;
  std::set<std::string> open_kinds;
  for (const LifecycleRecord& r : records) {
    if (r.closed()) {
      closed_days[r.kind].push_back(r.lifespan_days);
    } else if (r.removal_mode == RemovalMode::kOpen) {
      open_kinds.insert(r.kind);
    }
  }
  for (auto& [kind, days] : closed_days) {
    out.median_removal_days[kind] = *Median(days);
  }
  for (const std::string& kind : open_kinds) {
    if (!out.median_removal_days.contains(kind)) {
      out.skipped_kinds.push_back(kind);
    }
  }
  for (LifecycleRecord& r : records) {
    if (r.removal_mode != RemovalMode::kOpen) continue;
    auto it = out.median_removal_days.find(r.kind);
    if (it == out.median_removal_days.end()) continue;
    const double expected_removal =
        static_cast<double>(r.introducing_timestamp) +
        it->second * kSecondsPerDay;
    if (expected_removal > static_cast<double>(head_timestamp)) {
      r.removal_mode = RemovalMode::kCensored;
    }
  }
  out.records = std::move(records);
  return out;
}

std::map<std::string, SurvivalSummary> SurvivalStats(
    const std::vector<LifecycleRecord>& records) {
  std::map<std::string, SurvivalSummary> out;
  std::map<std::string, std::vector<double>> commits, days;
  for (const SmellKind& k : Catalog()) out[k.id];
  for (const LifecycleRecord& r : records) {
    SurvivalSummary& s = out[r.kind];
    if (r.removal_mode == RemovalMode::kCensored) {
      ++s.censored;
      continue;
    }
    ++s.records;
    ++(r.closed() ? s.closed : s.open);
    commits[r.kind].push_back(r.lifespan_commits);
    days[r.kind].push_back(r.lifespan_days);
  }
  for (auto& [kind, s] : out) {
    s.mean_commits = Mean(commits[kind]);
    s.median_commits = Median(commits[kind]);
    s.mean_days = Mean(days[kind]);
    s.median_days = Median(days[kind]);
  }
  return out;
}

std::string LifecycleToCsv(const std::vector<LifecycleRecord>& records) {
  std::string out = CsvLine({"trace_id", "kind", "file_id", "introducing_sha",
                             "removing_sha", "removal_mode",
                             "lifespan_commits", "lifespan_days"});
  for (const LifecycleRecord& r : records) {
    out += CsvLine({r.trace_id, r.kind, r.file_id, r.introducing_sha,
                    r.removing_sha, std::string(RemovalModeName(r.removal_mode)),
                    std::to_string(r.lifespan_commits),
                    FormatDouble(r.lifespan_days)});
  }
  return out;
}

std::vector<LifecycleRecord> LifecycleFromCsv(std::string_view text) {
  const std::vector<CsvRow> rows = ParseCsv(text);
  const std::vector<std::string> header = {
      "trace_id",     "kind",          "file_id",
      "introducing_sha", "removing_sha", "removal_mode",
      "lifespan_commits", "lifespan_days"};
  if (rows.empty() || rows[0].fields != header) {
    throw FormatError("lifecycle.csv: unexpected header");
  }
  std::vector<LifecycleRecord> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    if (f.size() != header.size()) {
      throw FormatError(fmt::format("lifecycle.csv line {}: expected 8 fields",
                                    rows[i].line));
    }
    try {
      LifecycleRecord r;
      r.trace_id = f[0];
      r.kind = f[1];
      r.file_id = f[2];
      r.introducing_sha = f[3];
      r.removing_sha = f[4];
      r.removal_mode = ParseRemovalMode(f[5]);
      r.lifespan_commits = std::stoi(f[6]);
      r.lifespan_days = std::stod(f[7]);
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw FormatError(
          fmt::format("lifecycle.csv line {}: {}", rows[i].line, e.what()));
    }
  }
  return out;
}

nlohmann::json TracesToJson(const std::string& project, const History& history,
                            const Lifecycle& lifecycle) {
  nlohmann::json traces = nlohmann::json::array();
  for (size_t t = 0; t < lifecycle.traces.size(); ++t) {
    const InstanceTrace& trace = lifecycle.traces[t];
    const LifecycleRecord& r = lifecycle.records[t];
    nlohmann::json anchors = nlohmann::json::array();
    for (const Anchor& a : trace.anchors) {
      anchors.push_back({{"ordinal", a.ordinal},
                         {"sha", history.commits.at(a.ordinal).sha},
                         {"path", a.path},
                         {"line", a.line},
                         {"snippet", a.snippet},
                         {"interpolated", a.interpolated}});
    }
    traces.push_back(
        {{"trace_id", trace.id},
         {"kind", trace.kind},
         {"file_id", trace.file_id},
         {"introducing_sha", r.introducing_sha},
         {"removing_sha", r.removing_sha.empty() ? nlohmann::json(nullptr)
                                                 : nlohmann::json(r.removing_sha)},
         {"removal_mode", RemovalModeName(r.removal_mode)},
         {"anchors", anchors}});
  }
  return {{"project", project},
          {"head", history.commits.empty() ? "" : history.commits.back().sha},
          {"commits", history.commits.size()},
          {"traces", traces}};
}

std::string SurvivalToCsv(const std::map<std::string, SurvivalSummary>& stats) {
  std::string out =
      CsvLine({"kind", "records", "open", "closed", "censored", "mean_commits",
               "median_commits", "mean_days", "median_days"});
  for (const auto& [kind, s] : stats) {
    out += CsvLine({kind, std::to_string(s.records), std::to_string(s.open),
                    std::to_string(s.closed), std::to_string(s.censored),
                    Optional(s.mean_commits), Optional(s.median_commits),
                    Optional(s.mean_days), Optional(s.median_days)});
  }
  return out;
}

}  // namespace mlsmells
