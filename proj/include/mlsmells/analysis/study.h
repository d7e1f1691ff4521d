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

#ifndef MLSMELLS_ANALYSIS_STUDY_H_
#define MLSMELLS_ANALYSIS_STUDY_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlsmells/analysis/stats.h"
#include "mlsmells/detectors/config.h"
#include "mlsmells/detectors/snapshot.h"
#include "mlsmells/histminer/history.h"
#include "mlsmells/histminer/niche.h"
#include "mlsmells/lifecycle/tracker.h"

namespace mlsmells {

// Per-project artifacts, one directory per project under the artifacts
// root: report.json, commits.csv and lifecycle.csv.
inline constexpr const char* kProjectArtifacts[] = {
    "report.json", "commits.csv", "lifecycle.csv"};

struct ProjectArtifacts {
  ProjectRecord project;
  DetectionReport report;
  std::vector<CommitRecord> commits;
  std::vector<LifecycleRecord> lifecycle;
};

// Loads every catalog project's artifacts. Throws IoError naming the first
// missing artifact (projects in catalog order, files in the order above).
std::vector<ProjectArtifacts> LoadArtifacts(
    const std::filesystem::path& root, const std::vector<ProjectRecord>& catalog);

struct StudyOptions {
  double alpha = kDefaultAlpha;
  bool holm = false;
  // H1 by Kruskal-Wallis over projects instead of Friedman over kinds.
  bool kruskal_wallis = false;
  DetectorConfig config = DetectorConfig::Defaults();
};

struct StudyOutputs {
  nlohmann::json analysis;
  std::string segments_csv;
  std::string rationale_csv;
  std::string cooccurrence_csv;
  std::string survival_csv;
};

StudyOutputs RunStudy(std::vector<ProjectArtifacts> projects,
                      const StudyOptions& options = {});

// Writes analysis.json, segments.csv, rationale.csv, cooccurrence.csv and
// survival.csv into `dir`.
void WriteStudy(const StudyOutputs& outputs, const std::filesystem::path& dir);

nlohmann::json StatResultToJson(const StatResult& r);

}  // namespace mlsmells

#endif  // MLSMELLS_ANALYSIS_STUDY_H_
