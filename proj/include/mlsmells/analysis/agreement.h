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

#ifndef MLSMELLS_ANALYSIS_AGREEMENT_H_
#define MLSMELLS_ANALYSIS_AGREEMENT_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlsmells/detectors/snapshot.h"

namespace mlsmells {

// One rater's Yes/No answers: rows are files, columns smell kinds.
struct ValidationSheet {
  std::string rater;
  std::vector<std::string> files;
  std::vector<std::string> kinds;
  std::vector<std::vector<bool>> cells;  // [file][kind]

  bool SameShape(const ValidationSheet& other) const {
    return files == other.files && kinds == other.kinds;
  }
  friend bool operator==(const ValidationSheet&,
                         const ValidationSheet&) = default;
};

// An unanswered sheet over `files` x `kinds`.
ValidationSheet EmptySheet(std::vector<std::string> files,
                           std::vector<std::string> kinds);

// sheet.csv: "file,<kind>,..." then one row per file. Answers are Yes/No
// (also y/n, true/false, 1/0, any case). Blank answers are a FormatError,
// as is an unfilled template.
ValidationSheet ParseSheet(std::string_view csv, std::string rater = "");
std::string SheetToCsv(const ValidationSheet& sheet, bool blank = false);

struct KappaResult {
  double kappa = 0;
  double observed = 0;  // p_o
  double expected = 0;  // p_e
  // Both raters constant and equal (p_e = 1) but not in full agreement.
  bool degenerate = false;
};

// Over all cells. Throws DomainError on mismatched shapes.
KappaResult CohenKappa(const ValidationSheet& a, const ValidationSheet& b);

struct MajorityResult {
  ValidationSheet truth;
  // (file index, kind index) of exact ties, resolved to No.
  std::vector<std::pair<size_t, size_t>> ties;
};

// Yes iff strictly more than half of the raters say Yes.
MajorityResult MajorityVote(const std::vector<ValidationSheet>& sheets);

struct Score {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  // Absent when the denominator is zero.
  std::optional<double> precision;
  std::optional<double> recall;
};

struct PrecisionRecallResult {
  std::map<std::string, Score> per_kind;
  Score overall;
};

// Projects the report onto the truth sheet's files x kinds: a cell is
// flagged when the file has at least one instance of the kind.
PrecisionRecallResult PrecisionRecall(const DetectionReport& tool,
                                      const ValidationSheet& truth);

}  // namespace mlsmells

#endif  // MLSMELLS_ANALYSIS_AGREEMENT_H_
