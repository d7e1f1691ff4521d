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

#ifndef MLSMELLS_PYSOURCE_BINDINGS_H_
#define MLSMELLS_PYSOURCE_BINDINGS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mlsmells/pysource/imports.h"
#include "mlsmells/pysource/syntax_tree.h"

namespace mlsmells::pysource {

enum class Role : uint8_t {
  kUnknown,
  kDataFrame,
  kSeries,
  kNdarray,
  kTensor,
  kOptimizer,
  kModel,
  kEstimator,
};

std::string_view RoleName(Role role);

using NameSet = std::set<std::string, std::less<>>;

// Seeding lists. Qualified entries ("pandas.read_csv") are matched against the
// import-resolved callee; bare entries (estimators) against its last
// component.
struct RoleRules {
  NameSet dataframe_constructors;
  NameSet series_constructors;
  NameSet ndarray_constructors;
  NameSet tensor_constructors;
  // Any callee under one of these prefixes whose last component starts with
  // an uppercase letter builds an optimizer ("torch.optim.SGD").
  NameSet optimizer_modules;
  NameSet model_constructors;
  // Module prefixes whose capitalized members instantiate models
  // ("torch.nn.Linear"), and base classes that make a local class a model.
  NameSet model_modules;
  NameSet model_bases;
  NameSet estimators;
  // Methods on a dataframe that return a dataframe.
  NameSet dataframe_methods;
  // Methods on a tensor or model that return the same role.
  NameSet tensor_methods;
  NameSet model_methods;

  static RoleRules Defaults();
};

struct Binding {
  Role role = Role::kUnknown;
  // Assignment (or parameter) node that produced the binding.
  NodeId site = kNoNode;
  int line = 0;
  // Byte offset from which the binding is visible.
  uint32_t visible_from = 0;
};

// Per-scope assignment history. Keys are plain names ("df") or attribute
// chains rooted at a name ("self.optimizer").
class BindingTable {
 public:
  using History = std::vector<Binding>;

  void Add(NodeId scope, std::string name, const Binding& b);

  // The binding in effect at `offset` in `scope`: the last one visible by
  // then. Falls back to the final module-level binding when the scope has no
  // binding of its own.
  const Binding* Lookup(const SyntaxTree& tree, NodeId scope,
                        std::string_view name, uint32_t offset) const;
  Role RoleAt(const SyntaxTree& tree, NodeId scope, std::string_view name,
              uint32_t offset) const;

  // Last-assignment-wins view of one scope.
  std::map<std::string, Binding, std::less<>> Snapshot(NodeId scope) const;

  const std::map<NodeId, std::map<std::string, History, std::less<>>>&
  scopes() const {
    return scopes_;
  }

 private:
  std::map<NodeId, std::map<std::string, History, std::less<>>> scopes_;
};

// Infers the role of an expression from the seeding rules, consulting the
// bindings collected so far. Shared by the binder and the detectors so both
// agree on what a "dataframe" is.
class RoleInference {
 public:
  RoleInference(const SyntaxTree& tree, const ImportTable& imports,
                const BindingTable& bindings, const RoleRules& rules);

  Role RoleOf(NodeId expr) const;
  // Role of a Name/Attribute chain at the position of `expr`.
  Role RoleOfName(NodeId expr) const;
  // Role produced when `call` is a seeded constructor ("torch.optim.SGD(...)")
  // rather than a method on an already-bound receiver.
  Role ConstructedRole(NodeId call) const;
  const std::set<std::string, std::less<>>& model_classes() const {
    return model_classes_;
  }

 private:
  Role RoleOfCall(NodeId call) const;

  const SyntaxTree& tree_;
  const ImportTable& imports_;
  const BindingTable& bindings_;
  const RoleRules& rules_;
  // Classes defined in this file that derive from a model base.
  std::set<std::string, std::less<>> model_classes_;
};

// One forward pass over the file; each scope's assignments are recorded in
// textual order.
BindingTable BindVariables(const SyntaxTree& tree, const ImportTable& imports,
                           const RoleRules& rules = RoleRules::Defaults());

}  // namespace mlsmells::pysource

#endif  // MLSMELLS_PYSOURCE_BINDINGS_H_
