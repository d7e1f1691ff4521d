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

#ifndef MLSMELLS_ANALYSIS_SAMPLING_H_
#define MLSMELLS_ANALYSIS_SAMPLING_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mlsmells/histminer/niche.h"

namespace mlsmells {

// Cochran's formula with p = 0.5 and the finite-population correction,
// rounded up. Throws DomainError on N < 1 or a confidence or margin outside
// (0, 1).
int64_t SampleSize(int64_t population, double confidence = 0.95,
                   double margin = 0.05);

struct SizeGrouping {
  double p30 = 0;
  double p60 = 0;
  // P30 == P60: every project at the shared boundary is medium.
  bool degenerate = false;
  int small = 0;
  int medium = 0;
  int large = 0;
};

// small < P30 <= medium < P60 <= large over the projects' LOC (type 7
// quantiles). Sets each project's size_group. Throws DomainError with fewer
// than 3 projects.
SizeGrouping AssignSizeGroups(std::vector<ProjectRecord>& projects);

// `count` distinct indices out of [0, n), in ascending order. Uses
// mt19937_64 with rejection sampling so the draw is identical on every
// platform.
std::vector<size_t> SampleIndices(size_t n, size_t count, uint64_t seed);

struct ValidationPackage {
  std::vector<std::string> files;
  std::string readme;
  std::string sheet_csv;  // empty file x kind template
};

ValidationPackage GenerateValidationPackage(
    const std::vector<std::string>& ml_files, double confidence,
    double margin, uint64_t seed);

// Writes files.txt, README.md and sheet.csv into `dir`.
void WriteValidationPackage(const ValidationPackage& package,
                            const std::filesystem::path& dir);

}  // namespace mlsmells

#endif  // MLSMELLS_ANALYSIS_SAMPLING_H_
