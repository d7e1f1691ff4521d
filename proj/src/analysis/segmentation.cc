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

#include "mlsmells/analysis/segmentation.h"

#include <algorithm>

#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

constexpr int64_t kDay = 86400;

}  // namespace

std::string_view DevelopmentTimeName(DevelopmentTime v) {
  switch (v) {
    case DevelopmentTime::kOneWeek:
      return "one week";
    case DevelopmentTime::kOneMonth:
      return "one month";
    case DevelopmentTime::kOneYear:
      return "one year";
    case DevelopmentTime::kMoreThanOneYear:
      break;
  }
  return "more than one year";
}

std::string_view ActivityLevelName(ActivityLevel v) {
  switch (v) {
    case ActivityLevel::kFirst10Percent:
      return "first 10%";
    case ActivityLevel::kFirst20Percent:
      return "first 20%";
    case ActivityLevel::kFirst50Percent:
      return "first 50%";
    case ActivityLevel::kAfterFirst50Percent:
      break;
  }
  return "after first 50%";
}

std::string_view ReleaseDistanceName(ReleaseDistance v) {
  switch (v) {
    case ReleaseDistance::kOneDay:
      return "one day";
    case ReleaseDistance::kOneWeek:
      return "one week";
    case ReleaseDistance::kOneMonth:
      return "one month";
    case ReleaseDistance::kMoreThanOneMonth:
      break;
  }
  return "more than one month";
}

SegmentLabel SegmentCommit(const CommitRecord& commit, int64_t start_timestamp,
                           int total_commits,
                           std::optional<int64_t> next_release_timestamp) {
  if (commit.ordinal < 0 || commit.ordinal >= total_commits) {
    throw DomainError("commit ordinal outside the history");
  }
  SegmentLabel s;
  const int64_t age = std::max<int64_t>(0, commit.timestamp - start_timestamp);
  if (age <= 7 * kDay) {
    s.development_time = DevelopmentTime::kOneWeek;
  } else if (age <= 30 * kDay) {
    s.development_time = DevelopmentTime::kOneMonth;
  } else if (age <= 365 * kDay) {
    s.development_time = DevelopmentTime::kOneYear;
  } else {
    s.development_time = DevelopmentTime::kMoreThanOneYear;
  }
  // Integer comparisons: ordinal / total < p  <=>  ordinal * 100 < p * total.
  const int64_t o = int64_t{commit.ordinal} * 100;
  const int64_t n = total_commits;
  if (o < 10 * n) {
    s.activity_level = ActivityLevel::kFirst10Percent;
  } else if (o < 20 * n) {
    s.activity_level = ActivityLevel::kFirst20Percent;
  } else if (o < 50 * n) {
    s.activity_level = ActivityLevel::kFirst50Percent;
  } else {
    s.activity_level = ActivityLevel::kAfterFirst50Percent;
  }
  if (!next_release_timestamp) {
    s.release_distance = ReleaseDistance::kMoreThanOneMonth;
  } else {
    const int64_t gap =
        std::max<int64_t>(0, *next_release_timestamp - commit.timestamp);
    if (gap <= kDay) {
      s.release_distance = ReleaseDistance::kOneDay;
    } else if (gap <= 7 * kDay) {
      s.release_distance = ReleaseDistance::kOneWeek;
    } else if (gap <= 30 * kDay) {
      s.release_distance = ReleaseDistance::kOneMonth;
    } else {
      s.release_distance = ReleaseDistance::kMoreThanOneMonth;
    }
  }
  return s;
}

std::vector<SegmentLabel> SegmentHistory(
    const std::vector<CommitRecord>& commits) {
  std::vector<SegmentLabel> out(commits.size());
  if (commits.empty()) return out;
  const int total = static_cast<int>(commits.size());
  std::optional<int64_t> next_release;
  for (int i = total - 1; i >= 0; --i) {
    if (commits[i].is_release) next_release = commits[i].timestamp;
    out[i] = SegmentCommit(commits[i], commits[0].timestamp, total,
                           next_release);
  }
  return out;
}

}  // namespace mlsmells
