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

// Scores the detectors against the annotated fixture corpus. Each flagged
// line carries a trailing "# expect: <kind>[, <kind>]" comment; precision and
// recall are computed here from raw counts, not taken from the library.

#include <filesystem>
#include <map>
#include <regex>
#include <set>

#include "gtest/gtest.h"
#include "mlsmells/detectors/detector.h"
#include "testing/fixtures.h"

namespace mlsmells {
namespace {

namespace fs = std::filesystem;
using KindLine = std::pair<std::string, int>;

std::set<KindLine> Expected(const std::string& src) {
  static const std::regex kExpect(R"(#\s*expect:\s*(.*)$)");
  std::set<KindLine> out;
  int line = 0;
  size_t start = 0;
  while (start < src.size()) {
    size_t nl = src.find('\n', start);
    if (nl == std::string::npos) nl = src.size();
    const std::string text = src.substr(start, nl - start);
    start = nl + 1;
    ++line;
    std::smatch m;
    if (!std::regex_search(text, m, kExpect)) continue;
    const std::string list = m[1];
    static const std::regex kItem(R"([a-z-]+)");
    for (auto it = std::sregex_iterator(list.begin(), list.end(), kItem);
         it != std::sregex_iterator(); ++it) {
      out.emplace(it->str(), line);
    }
  }
  return out;
}

struct Score {
  int tp = 0, fp = 0, fn = 0;
  int positive_files = 0, negative_files = 0;
};

TEST(FixtureCorpusTest, PerfectPrecisionAndRecallPerKind) {
  std::map<std::string, Score> scores;
  for (const SmellKind& k : Catalog()) scores[k.id];
  const fs::path root = testing::FixturePath("smells");
  for (const auto& dir : fs::directory_iterator(root)) {
    const std::string kind = dir.path().filename().string();
    ASSERT_NE(FindKind(kind), nullptr) << kind;
    for (const auto& file : fs::directory_iterator(dir.path())) {
      const std::string src = testing::ReadFile(file.path());
      const std::set<KindLine> want = Expected(src);
      const bool positive = file.path().stem().string().starts_with("pos");
      (positive ? scores[kind].positive_files : scores[kind].negative_files)++;
      if (positive) {
        EXPECT_FALSE(want.empty()) << file.path();
      }
      AnalyzedFile got = AnalyzeSource(
          pysource::MakeSourceFile(file.path().string(), src),
          DetectorConfig::Defaults());
      ASSERT_FALSE(got.parse_error.has_value()) << file.path();
      ASSERT_TRUE(got.ml) << file.path();
      std::set<KindLine> have;
      for (const auto& i : got.instances) have.emplace(i.kind, i.line);
      for (const auto& kl : have) {
        (want.contains(kl) ? scores[kl.first].tp : scores[kl.first].fp)++;
        EXPECT_TRUE(want.contains(kl))
            << "unexpected " << kl.first << "@" << kl.second << " in "
            << file.path();
      }
      for (const auto& kl : want) {
        if (!have.contains(kl)) {
          scores[kl.first].fn++;
          ADD_FAILURE() << "missed " << kl.first << "@" << kl.second << " in "
                        << file.path();
        }
      }
    }
  }
  for (const auto& [kind, s] : scores) {
    EXPECT_GE(s.positive_files, 3) << kind;
    EXPECT_GE(s.negative_files, 2) << kind;
    ASSERT_GT(s.tp + s.fp, 0) << kind;
    const double precision = static_cast<double>(s.tp) / (s.tp + s.fp);
    const double recall = static_cast<double>(s.tp) / (s.tp + s.fn);
    EXPECT_EQ(precision, 1.0) << kind;
    EXPECT_EQ(recall, 1.0) << kind;
  }
}

}  // namespace
}  // namespace mlsmells
