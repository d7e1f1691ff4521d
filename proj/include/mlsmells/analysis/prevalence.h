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

#ifndef MLSMELLS_ANALYSIS_PREVALENCE_H_
#define MLSMELLS_ANALYSIS_PREVALENCE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "mlsmells/detectors/config.h"
#include "mlsmells/detectors/snapshot.h"

namespace mlsmells {

struct PrevalenceCount {
  int count = 0;
  // 1000 * count / LOC; absent when LOC is 0.
  std::optional<double> per_kloc;
};

struct Prevalence {
  int64_t loc = 0;
  std::map<std::string, PrevalenceCount> per_kind;   // all catalog kinds
  std::map<std::string, PrevalenceCount> per_stage;  // by stage name
};

Prevalence ComputePrevalence(
    const DetectionReport& report,
    const DetectorConfig& config = DetectorConfig::Defaults());

}  // namespace mlsmells

#endif  // MLSMELLS_ANALYSIS_PREVALENCE_H_
