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

#ifndef MLSMELLS_LIFECYCLE_SURVIVAL_H_
#define MLSMELLS_LIFECYCLE_SURVIVAL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mlsmells/histminer/history.h"
#include "mlsmells/lifecycle/tracker.h"

namespace mlsmells {

struct CensoringResult {
  std::vector<LifecycleRecord> records;
  // Median removal time in days per kind, over closed records.
  std::map<std::string, double> median_removal_days;
  // Kinds with open records but no closed record to take a median from;
  // their open records are left uncensored.
  std::vector<std::string> skipped_kinds;
};

// Marks open records whose introduction plus the per-kind median removal
// time falls after `head_timestamp` as censored. Closed records are never
// touched. Medians come from the records passed in.
CensoringResult ApplyCensoring(std::vector<LifecycleRecord> records,
                               int64_t head_timestamp);

struct SurvivalSummary {
  int records = 0;  // non-censored
  int open = 0;
  int closed = 0;
  int censored = 0;
  // Absent when no non-censored record exists.
  std::optional<double> mean_commits;
  std::optional<double> median_commits;
  std::optional<double> mean_days;
  std::optional<double> median_days;
};

// Per kind, over non-censored records. Every catalog kind is present.
std::map<std::string, SurvivalSummary> SurvivalStats(
    const std::vector<LifecycleRecord>& records);

// Median with the midpoint rule for even sizes; nullopt when empty.
std::optional<double> Median(std::vector<double> values);

// lifecycle.csv: trace_id,kind,file_id,introducing_sha,removing_sha,
// removal_mode,lifespan_commits,lifespan_days
std::string LifecycleToCsv(const std::vector<LifecycleRecord>& records);
// Fills the CSV columns only; ordinals and timestamps stay zero.
std::vector<LifecycleRecord> LifecycleFromCsv(std::string_view text);

// traces.json: per-trace anchors with the commit sha of each.
nlohmann::json TracesToJson(const std::string& project,
                            const History& history,
                            const Lifecycle& lifecycle);

// survival.csv: kind,records,open,closed,censored,mean_commits,
// median_commits,mean_days,median_days (absent values are empty).
std::string SurvivalToCsv(const std::map<std::string, SurvivalSummary>& stats);

}  // namespace mlsmells

#endif  // MLSMELLS_LIFECYCLE_SURVIVAL_H_
