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

#include "mlsmells/detectors/catalog.h"

#include <algorithm>

namespace mlsmells {

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kDataCleaning:
      return "data cleaning";
    case Stage::kDataPreparation:
      return "data preparation";
    case Stage::kModelTraining:
      return "model training";
    case Stage::kModelEvaluation:
      return "model evaluation";
    case Stage::kGeneral:
      return "general";
  }
  return "general";
}

std::optional<Stage> ParseStage(std::string_view name) {
  for (Stage s : {Stage::kDataCleaning, Stage::kDataPreparation,
                  Stage::kModelTraining, Stage::kModelEvaluation,
                  Stage::kGeneral}) {
    if (StageName(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view ScopeName(SmellScope scope) {
  switch (scope) {
    case SmellScope::kExpression:
      return "expression";
    case SmellScope::kStatement:
      return "statement";
    case SmellScope::kLoop:
      return "loop";
    case SmellScope::kFile:
      return "file";
  }
  return "expression";
}

const std::vector<SmellKind>& Catalog() {
  static const std::vector<SmellKind> kinds = [] {
    using enum Stage;
    using enum SmellScope;
    std::vector<SmellKind> v = {
        {"unnecessary-iteration", "Unnecessary Iteration", kDataPreparation,
         kLoop, {"pandas", "torch"},
         "Looping over dataframe or tensor rows where a vectorized operation would do."},
        {"nan-equivalence-misused", "NaN Equivalence Comparison Misused",
         kDataCleaning, kExpression, {"numpy", "pandas"},
         "Comparing a value with NaN through == or !=, which is always False or True."},
        {"chain-indexing", "Chain Indexing", kDataCleaning, kExpression,
         {"pandas"},
         "Indexing a dataframe twice in a row (df[\"a\"][\"b\"]), which may act on a copy."},
        {"columns-dtype-not-set", "Columns and DataType Not Explicitly Set",
         kDataCleaning, kStatement, {"pandas"},
         "Reading a CSV without selecting columns or declaring their data types."},
        {"empty-column-misinit", "Empty Column Misinitialization",
         kDataCleaning, kStatement, {"pandas"},
         "Initializing a new dataframe column with 0 or an empty string instead of NaN."},
        {"merge-params-not-set", "Merge API Parameter Not Explicitly Set",
         kDataPreparation, kStatement, {"pandas"},
         "Calling merge without stating both the join type (how) and the join keys (on)."},
        {"inplace-api-misused", "In-Place APIs Misused", kDataCleaning,
         kStatement, {"pandas"},
         "Calling a dataframe method that returns a new object and discarding the result."},
        {"dataframe-conversion-misused", "Dataframe Conversion API Misused",
         kDataPreparation, kExpression, {"pandas"},
         "Using .values to convert a dataframe instead of .to_numpy()."},
        {"matmul-api-misused", "Matrix Multiplication API Misused",
         kDataPreparation, kExpression, {"numpy"},
         "Using np.dot on two matrices instead of np.matmul."},
        {"gradients-not-cleared",
         "Gradients Not Cleared before Backward Propagation", kModelTraining,
         kLoop, {"torch"},
         "Calling backward() in a training loop without clearing gradients with zero_grad()."},
        {"memory-not-freed", "Memory Not Freed", kModelTraining, kLoop,
         {"tensorflow", "torch"},
         "Building models in a loop without releasing memory (del, clear_session, empty_cache)."},
        {"hyperparameters-not-set", "Hyperparameter Not Explicitly Set",
         kModelTraining, kStatement, {"sklearn", "torch"},
         "Constructing an estimator or optimizer while relying on default hyperparameters."},
        {"deterministic-option-not-used",
         "Deterministic Algorithm Option Not Used", kModelTraining, kFile,
         {"torch"},
         "Training with PyTorch without enabling deterministic algorithms."},
        {"randomness-uncontrolled", "Randomness Uncontrolled", kGeneral, kFile,
         {"numpy", "random", "tensorflow", "torch"},
         "Drawing random numbers without seeding the generator anywhere in the file."},
    };
    std::sort(v.begin(), v.end(),
              [](const SmellKind& a, const SmellKind& b) { return a.id < b.id; });
    return v;
  }();
  return kinds;
}

const SmellKind* FindKind(std::string_view id) {
  for (const SmellKind& k : Catalog()) {
    if (k.id == id) return &k;
  }
  return nullptr;
}

}  // namespace mlsmells
