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

#ifndef MLSMELLS_ANALYSIS_SEGMENTATION_H_
#define MLSMELLS_ANALYSIS_SEGMENTATION_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mlsmells/histminer/history.h"

namespace mlsmells {

enum class DevelopmentTime { kOneWeek, kOneMonth, kOneYear, kMoreThanOneYear };
enum class ActivityLevel {
  kFirst10Percent,
  kFirst20Percent,
  kFirst50Percent,
  kAfterFirst50Percent,
};
enum class ReleaseDistance {
  kOneDay,
  kOneWeek,
  kOneMonth,
  kMoreThanOneMonth,
};

std::string_view DevelopmentTimeName(DevelopmentTime v);
std::string_view ActivityLevelName(ActivityLevel v);
std::string_view ReleaseDistanceName(ReleaseDistance v);

struct SegmentLabel {
  DevelopmentTime development_time = DevelopmentTime::kOneWeek;
  ActivityLevel activity_level = ActivityLevel::kFirst10Percent;
  ReleaseDistance release_distance = ReleaseDistance::kMoreThanOneMonth;

  friend bool operator==(const SegmentLabel&, const SegmentLabel&) = default;
};

// Each axis takes the first (smallest) bucket that contains the commit.
// Bucket bounds are inclusive: 7, 30 and 365 days since the project start;
// ordinal below 10%, 20% and 50% of the commits; 1, 7 and 30 days until the
// next release. Negative spans (clock skew) count as zero.
SegmentLabel SegmentCommit(const CommitRecord& commit, int64_t start_timestamp,
                           int total_commits,
                           std::optional<int64_t> next_release_timestamp);

// Labels every commit; the start is the root commit's timestamp and the next
// release is the first release at or after the commit's ordinal.
std::vector<SegmentLabel> SegmentHistory(
    const std::vector<CommitRecord>& commits);

}  // namespace mlsmells

#endif  // MLSMELLS_ANALYSIS_SEGMENTATION_H_
