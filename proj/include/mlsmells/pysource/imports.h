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

#ifndef MLSMELLS_PYSOURCE_IMPORTS_H_
#define MLSMELLS_PYSOURCE_IMPORTS_H_

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "mlsmells/pysource/syntax_tree.h"

namespace mlsmells::pysource {

// Local name -> canonical dotted path for every import in a file, plus the
// set of imported top-level packages.
//
//   import pandas as pd          pd    -> pandas
//   import torch.nn              torch -> torch
//   from torch import optim      optim -> torch.optim
//   from .utils import load      load  -> .utils.load   (no root recorded)
//   from numpy import *          roots += numpy
struct ImportTable {
  std::map<std::string, std::string, std::less<>> aliases;
  std::set<std::string, std::less<>> roots;

  bool empty() const { return aliases.empty() && roots.empty(); }

  // Rewrites the head of a dotted reference through the alias map:
  // "pd.read_csv" -> "pandas.read_csv". Unknown heads map to themselves.
  std::string Resolve(std::string_view dotted) const;

  friend bool operator==(const ImportTable&, const ImportTable&) = default;
};

// Visits every import statement in the file, including nested ones; a later
// import of the same alias replaces the earlier mapping.
ImportTable ResolveImports(const SyntaxTree& tree);

// The libraries whose import marks a file as ML-related.
inline constexpr std::string_view kMlLibraries[] = {"pandas", "tensorflow",
                                                   "theano", "torch"};

bool ClassifyMlFile(const ImportTable& imports);

// Dotted source text of a Name/Attribute chain ("self.opt.step"), or empty
// when `expr` is anything else.
std::string DottedName(const SyntaxTree& tree, NodeId expr);

// DottedName resolved through the import table, or empty.
std::string QualifiedName(const SyntaxTree& tree, NodeId expr,
                          const ImportTable& imports);

}  // namespace mlsmells::pysource

#endif  // MLSMELLS_PYSOURCE_IMPORTS_H_
