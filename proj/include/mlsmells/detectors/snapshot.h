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

#ifndef MLSMELLS_DETECTORS_SNAPSHOT_H_
#define MLSMELLS_DETECTORS_SNAPSHOT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlsmells/detectors/config.h"
#include "mlsmells/detectors/detector.h"

namespace mlsmells {

struct FileReport {
  std::string path;
  bool ml = false;
  int loc = 0;
  std::optional<pysource::SyntaxError> parse_error;
  std::vector<SmellInstance> instances;
};

struct DetectionReport {
  std::string project;
  std::string commit;
  // Every .py file of the snapshot, ordered by path.
  std::vector<FileReport> files;
  // All catalog kinds, zero-filled.
  std::map<std::string, int> counts;
  int ml_files = 0;
  int64_t total_loc = 0;
  std::vector<std::string> diagnostics;

  int TotalInstances() const;
};

// Aggregates per-file results. Files are sorted by path; counts and totals
// are recomputed from them.
DetectionReport BuildReport(std::string project, std::string commit,
                            std::vector<FileReport> files,
                            std::vector<std::string> diagnostics = {});

FileReport ToFileReport(AnalyzedFile analyzed, const std::string& commit);

// Every readable `.py` file below `checkout` (skipping .git) is parsed and
// counted toward LOC; detection runs on ML files only. Unreadable files are
// logged in the diagnostics and skipped. `workers` <= 0 uses all cores.
DetectionReport DetectSnapshot(const std::filesystem::path& checkout,
                               const DetectorConfig& config,
                               const std::string& project = "",
                               const std::string& commit = "",
                               int workers = 0);

nlohmann::json ReportToJson(const DetectionReport& report);
// Throws FormatError on a document that does not follow the report layout.
DetectionReport ReportFromJson(const nlohmann::json& doc);

}  // namespace mlsmells

#endif  // MLSMELLS_DETECTORS_SNAPSHOT_H_
