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

#include "mlsmells/analysis/agreement.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "fmt/core.h"
#include "mlsmells/util/csv.h"
#include "mlsmells/util/errors.h"

namespace mlsmells {
namespace {

std::optional<bool> ParseAnswer(std::string_view s) {
  std::string v;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      v += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (v == "yes" || v == "y" || v == "true" || v == "1") return true;
  if (v == "no" || v == "n" || v == "false" || v == "0") return false;
  return std::nullopt;
}

void Fill(Score& s) {
  if (s.tp + s.fp > 0) s.precision = double(s.tp) / (s.tp + s.fp);
  if (s.tp + s.fn > 0) s.recall = double(s.tp) / (s.tp + s.fn);
}

}  // namespace

ValidationSheet EmptySheet(std::vector<std::string> files,
                           std::vector<std::string> kinds) {
  ValidationSheet s;
  s.cells.assign(files.size(), std::vector<bool>(kinds.size(), false));
  s.files = std::move(files);
  s.kinds = std::move(kinds);
  return s;
}

ValidationSheet ParseSheet(std::string_view csv, std::string rater) {
  const std::vector<CsvRow> rows = ParseCsv(csv);
  if (rows.empty() || rows[0].fields.empty() || rows[0].fields[0] != "file") {
    throw FormatError("sheet: header must start with 'file'");
  }
  ValidationSheet s;
  s.rater = std::move(rater);
  s.kinds.assign(rows[0].fields.begin() + 1, rows[0].fields.end());
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != s.kinds.size() + 1) {
      throw FormatError(fmt::format("sheet line {}: expected {} fields",
                                    rows[r].line, s.kinds.size() + 1));
    }
    std::vector<bool> answers;
    for (size_t c = 1; c < f.size(); ++c) {
      const auto v = ParseAnswer(f[c]);
      if (!v) {
        throw FormatError(fmt::format("sheet line {}: answer '{}' for {} is "
                                      "not Yes/No",
                                      rows[r].line, f[c], s.kinds[c - 1]));
      }
      answers.push_back(*v);
    }
    s.files.push_back(f[0]);
    s.cells.push_back(std::move(answers));
  }
  return s;
}

std::string SheetToCsv(const ValidationSheet& sheet, bool blank) {
  std::vector<std::string> header = {"file"};
  header.insert(header.end(), sheet.kinds.begin(), sheet.kinds.end());
  std::string out = CsvLine(header);
  for (size_t r = 0; r < sheet.files.size(); ++r) {
    std::vector<std::string> row = {sheet.files[r]};
    for (size_t c = 0; c < sheet.kinds.size(); ++c) {
      row.push_back(blank ? "" : (sheet.cells[r][c] ? "Yes" : "No"));
    }
    out += CsvLine(row);
  }
  return out;
}

KappaResult CohenKappa(const ValidationSheet& a, const ValidationSheet& b) {
  if (!a.SameShape(b)) throw DomainError("kappa: sheets differ in shape");
  KappaResult k;
  double agree = 0, yes_a = 0, yes_b = 0, cells = 0;
  for (size_t r = 0; r < a.cells.size(); ++r) {
    for (size_t c = 0; c < a.cells[r].size(); ++c) {
      const bool x = a.cells[r][c];
      const bool y = b.cells[r][c];
      agree += x == y;
      yes_a += x;
      yes_b += y;
      ++cells;
    }
  }
  if (cells == 0) throw DomainError("kappa: empty sheets");
  k.observed = agree / cells;
  const double pa = yes_a / cells;
  const double pb = yes_b / cells;
  k.expected = pa * pb + (1 - pa) * (1 - pb);
  if (k.expected == 1.0) {
    k.kappa = 1.0;
    k.degenerate = k.observed != 1.0;
    return k;
  }
  k.kappa = (k.observed - k.expected) / (1 - k.expected);
  return k;
}

MajorityResult MajorityVote(const std::vector<ValidationSheet>& sheets) {
  if (sheets.empty()) throw DomainError("majority vote needs a sheet");
  for (const auto& s : sheets) {
    if (!s.SameShape(sheets[0])) {
      throw DomainError("majority vote: sheets differ in shape");
    }
  }
  MajorityResult m;
  m.truth = EmptySheet(sheets[0].files, sheets[0].kinds);
  m.truth.rater = "majority";
  const size_t raters = sheets.size();
  for (size_t r = 0; r < m.truth.files.size(); ++r) {
    for (size_t c = 0; c < m.truth.kinds.size(); ++c) {
      size_t yes = 0;
      for (const auto& s : sheets) yes += s.cells[r][c];
      m.truth.cells[r][c] = 2 * yes > raters;
      if (2 * yes == raters) m.ties.emplace_back(r, c);
    }
  }
  return m;
}

PrecisionRecallResult PrecisionRecall(const DetectionReport& tool,
                                      const ValidationSheet& truth) {
  std::set<std::pair<std::string, std::string>> flagged;
  for (const FileReport& f : tool.files) {
    for (const SmellInstance& i : f.instances) flagged.emplace(f.path, i.kind);
  }
  PrecisionRecallResult out;
  for (const std::string& kind : truth.kinds) out.per_kind[kind];
  for (size_t r = 0; r < truth.files.size(); ++r) {
    for (size_t c = 0; c < truth.kinds.size(); ++c) {
      const bool said = flagged.contains({truth.files[r], truth.kinds[c]});
      const bool real = truth.cells[r][c];
      for (Score* s : {&out.per_kind[truth.kinds[c]], &out.overall}) {
        if (said && real) ++s->tp;
        if (said && !real) ++s->fp;
        if (!said && real) ++s->fn;
      }
    }
  }
  for (auto& [kind, s] : out.per_kind) Fill(s);
  Fill(out.overall);
  return out;
}

}  // namespace mlsmells
