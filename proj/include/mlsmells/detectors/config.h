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

#ifndef MLSMELLS_DETECTORS_CONFIG_H_
#define MLSMELLS_DETECTORS_CONFIG_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mlsmells/detectors/catalog.h"
#include "mlsmells/pysource/bindings.h"

namespace mlsmells {

using pysource::NameSet;

// Immutable once loaded. Every list a rule consults lives here so rules can
// be tightened from a config file.
struct DetectorConfig {
  NameSet disabled;
  pysource::RoleRules roles;

  NameSet iteration_methods;    // rule 1: df.iterrows()
  NameSet nan_constants;        // rule 2
  NameSet read_csv_functions;   // rule 4
  NameSet dtype_keywords;       // rule 4
  NameSet merge_how_keywords;   // rule 6
  NameSet merge_on_keywords;    // rule 6
  NameSet inplace_methods;      // rule 7
  NameSet matmul_functions;     // rule 9
  NameSet backward_methods;     // rule 10
  NameSet clear_grad_methods;   // rule 10
  NameSet memory_free_calls;    // rule 11, matched on the last component
  NameSet deterministic_calls;  // rule 13, matched on the last component
  NameSet random_prefixes;      // rule 14, prefix of the qualified callee
  NameSet seed_calls;           // rule 14

  std::map<std::string, Stage, std::less<>> stage_overrides;
  // Extra phrases that count as self-admission of a kind in commit messages.
  std::map<std::string, std::vector<std::string>, std::less<>> terms;

  static DetectorConfig Defaults();

  bool Enabled(std::string_view kind) const {
    return !disabled.contains(kind);
  }
  Stage StageOf(const SmellKind& kind) const;

  // Stable digest of everything that can change detection output. Used as
  // part of the analysis cache key.
  std::string RuleSetHash() const;
};

// Parses the key-value format:
//
//   # comment
//   disable = chain-indexing, matmul-api-misused
//   enable = chain-indexing
//   estimators += MyBooster          (extend a list)
//   inplace_methods = dropna, fillna (replace a list)
//   stage.chain-indexing = data preparation
//   terms.chain-indexing = chained assignment, settingwithcopy
//
// Starts from the defaults. Throws FormatError naming the offending line.
DetectorConfig ParseDetectorConfig(std::string_view text);
DetectorConfig LoadDetectorConfig(const std::filesystem::path& path);

// Names of the list keys accepted by the config file.
std::vector<std::string> ConfigListKeys();

}  // namespace mlsmells

#endif  // MLSMELLS_DETECTORS_CONFIG_H_
