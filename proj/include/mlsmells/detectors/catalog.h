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

#ifndef MLSMELLS_DETECTORS_CATALOG_H_
#define MLSMELLS_DETECTORS_CATALOG_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlsmells {

enum class Stage {
  kDataCleaning,
  kDataPreparation,
  kModelTraining,
  kModelEvaluation,
  kGeneral,
};

enum class SmellScope { kExpression, kStatement, kLoop, kFile };

std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view name);
std::string_view ScopeName(SmellScope scope);

struct SmellKind {
  std::string id;
  std::string name;
  Stage stage;
  SmellScope scope;
  std::vector<std::string> libraries;
  // One-sentence definition for validators.
  std::string definition;
};

// The 14 default kinds, ordered by id.
const std::vector<SmellKind>& Catalog();
const SmellKind* FindKind(std::string_view id);

}  // namespace mlsmells

#endif  // MLSMELLS_DETECTORS_CATALOG_H_
