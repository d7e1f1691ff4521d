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

#include "mlsmells/analysis/prevalence.h"

#include "mlsmells/detectors/catalog.h"

namespace mlsmells {

Prevalence ComputePrevalence(const DetectionReport& report,
                             const DetectorConfig& config) {
  Prevalence p;
  p.loc = report.total_loc;
  auto normalize = [&](PrevalenceCount& c) {
    if (p.loc > 0) c.per_kloc = 1000.0 * c.count / static_cast<double>(p.loc);
  };
  for (const SmellKind& k : Catalog()) {
    auto it = report.counts.find(k.id);
    const int count = it == report.counts.end() ? 0 : it->second;
    p.per_kind[k.id].count = count;
    p.per_stage[std::string(StageName(config.StageOf(k)))].count += count;
  }
  for (auto& [kind, c] : p.per_kind) normalize(c);
  for (auto& [stage, c] : p.per_stage) normalize(c);
  return p;
}

}  // namespace mlsmells
