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

#ifndef MLSMELLS_DETECTORS_DETECTOR_H_
#define MLSMELLS_DETECTORS_DETECTOR_H_

#include <compare>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlsmells/detectors/config.h"
#include "mlsmells/pysource/bindings.h"
#include "mlsmells/pysource/imports.h"
#include "mlsmells/pysource/source_file.h"
#include "mlsmells/pysource/syntax_error.h"
#include "mlsmells/pysource/syntax_tree.h"

namespace mlsmells {

struct SmellInstance {
  std::string kind;
  std::string file;
  int line = 0;
  // Verbatim source of the flagged node. Loop-scope smells keep only the
  // loop header's first line; file-scope smells keep line 1.
  std::string snippet;
  std::string commit;

  friend bool operator==(const SmellInstance&, const SmellInstance&) = default;
  friend auto operator<=>(const SmellInstance&,
                          const SmellInstance&) = default;
};

// Everything a rule may look at. Built once per file.
struct RuleContext {
  const pysource::SyntaxTree& tree;
  const pysource::ImportTable& imports;
  const pysource::BindingTable& bindings;
  const pysource::RoleInference& roles;
  const DetectorConfig& config;
};

// Where a rule fired. `file_scope` anchors the hit at line 1.
struct RuleHit {
  pysource::NodeId node = pysource::kNoNode;
  bool file_scope = false;
};

struct Rule {
  std::string_view kind;
  std::function<void(const RuleContext&, std::vector<RuleHit>&)> run;
};

// The 14 rules, in catalog order.
std::span<const Rule> DefaultRules();

struct FileDetection {
  std::vector<SmellInstance> instances;
  // One line per rule that threw; the other rules still ran.
  std::vector<std::string> diagnostics;
};

// Runs every enabled rule. Instances are sorted by (line, kind) and
// deduplicated on that pair.
FileDetection DetectFile(const pysource::SyntaxTree& tree,
                         const pysource::ImportTable& imports,
                         const pysource::BindingTable& bindings,
                         const DetectorConfig& config,
                         std::string_view file = "");
FileDetection DetectFile(const pysource::SyntaxTree& tree,
                         const pysource::ImportTable& imports,
                         const pysource::BindingTable& bindings,
                         const DetectorConfig& config, std::string_view file,
                         std::span<const Rule> rules);

// Parse, classify and detect one file. Non-ML files and files that fail to
// parse carry no instances.
struct AnalyzedFile {
  std::string path;
  int loc = 0;
  bool ml = false;
  std::optional<pysource::SyntaxError> parse_error;
  std::vector<SmellInstance> instances;
  std::vector<std::string> diagnostics;
};

AnalyzedFile AnalyzeSource(const pysource::SourceFile& file,
                           const DetectorConfig& config);

}  // namespace mlsmells

#endif  // MLSMELLS_DETECTORS_DETECTOR_H_
