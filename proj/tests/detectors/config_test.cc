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

#include "mlsmells/detectors/config.h"

#include "gtest/gtest.h"
#include "mlsmells/util/errors.h"
#include "testing/fixtures.h"

namespace mlsmells {
namespace {

TEST(DetectorConfigTest, DefaultsEnableEverything) {
  DetectorConfig c = DetectorConfig::Defaults();
  for (const SmellKind& k : Catalog()) EXPECT_TRUE(c.Enabled(k.id));
  EXPECT_TRUE(c.roles.estimators.contains("LogisticRegression"));
}

TEST(DetectorConfigTest, DisableAndEnable) {
  DetectorConfig c = ParseDetectorConfig(
      "# tighten\n"
      "disable = chain-indexing, matmul-api-misused\n"
      "enable = matmul-api-misused\n");
  EXPECT_FALSE(c.Enabled("chain-indexing"));
  EXPECT_TRUE(c.Enabled("matmul-api-misused"));
}

TEST(DetectorConfigTest, ExtendAndReplaceLists) {
  DetectorConfig c = ParseDetectorConfig(
      "estimators += MyBooster\n"
      "inplace_methods = dropna\n");
  EXPECT_TRUE(c.roles.estimators.contains("MyBooster"));
  EXPECT_TRUE(c.roles.estimators.contains("SVC"));
  EXPECT_EQ(c.inplace_methods, (NameSet{"dropna"}));
}

TEST(DetectorConfigTest, StageOverridesAndTerms) {
  DetectorConfig c = ParseDetectorConfig(
      "stage.chain-indexing = data preparation\n"
      "terms.chain-indexing = chained assignment, SettingWithCopy\n");
  EXPECT_EQ(c.StageOf(*FindKind("chain-indexing")), Stage::kDataPreparation);
  EXPECT_EQ(c.terms.at("chain-indexing").size(), 2u);
}

TEST(DetectorConfigTest, ErrorsNameTheLine) {
  try {
    ParseDetectorConfig("disable = chain-indexing\nbogus = 1\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(ParseDetectorConfig("disable = not-a-smell\n"), FormatError);
  EXPECT_THROW(ParseDetectorConfig("no equals sign\n"), FormatError);
  EXPECT_THROW(ParseDetectorConfig("stage.chain-indexing = lunch\n"),
               FormatError);
}

TEST(DetectorConfigTest, RuleSetHashTracksDetectionInputsOnly) {
  const std::string base = DetectorConfig::Defaults().RuleSetHash();
  EXPECT_EQ(base.size(), 16u);
  EXPECT_EQ(base, ParseDetectorConfig("").RuleSetHash());
  EXPECT_NE(base, ParseDetectorConfig("disable = chain-indexing\n")
                      .RuleSetHash());
  EXPECT_NE(base, ParseDetectorConfig("estimators += X\n").RuleSetHash());
  EXPECT_EQ(base,
            ParseDetectorConfig("terms.chain-indexing = x\n").RuleSetHash());
}

TEST(DetectorConfigTest, LoadFromFile) {
  testing::TempDir dir;
  testing::WriteFile(dir / "rules.cfg", "disable = memory-not-freed\n");
  EXPECT_FALSE(LoadDetectorConfig(dir / "rules.cfg").Enabled("memory-not-freed"));
  EXPECT_THROW(LoadDetectorConfig(dir / "missing.cfg"), IoError);
}

TEST(DetectorConfigTest, EveryListKeyIsAccepted) {
  for (const auto& key : ConfigListKeys()) {
    EXPECT_NO_THROW(ParseDetectorConfig(key + " += x\n")) << key;
  }
}

}  // namespace
}  // namespace mlsmells
