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

#ifndef MLSMELLS_UTIL_CSV_H_
#define MLSMELLS_UTIL_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace mlsmells {

// RFC 4180 rows. `line` is the 1-based physical line the row starts on.
struct CsvRow {
  int line = 0;
  std::vector<std::string> fields;
};

// Throws FormatError on an unterminated quoted field.
std::vector<CsvRow> ParseCsv(std::string_view text);

// Quotes a field only when it contains a separator, quote or line break.
std::string CsvEscape(std::string_view field);

std::string CsvLine(const std::vector<std::string>& fields);

// Fixed-precision decimal formatting used by every CSV writer, so outputs are
// byte-stable.
std::string FormatDouble(double value, int precision = 6);

}  // namespace mlsmells

#endif  // MLSMELLS_UTIL_CSV_H_
