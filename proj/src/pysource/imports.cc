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

#include "mlsmells/pysource/imports.h"

#include <cctype>
#include <vector>

namespace mlsmells::pysource {
namespace {

std::string RootOf(std::string_view dotted) {
  std::string root(dotted.substr(0, dotted.find('.')));
  for (char& c : root) c = static_cast<char>(std::tolower(c));
  return root;
}

}  // namespace

std::string ImportTable::Resolve(std::string_view dotted) const {
  const size_t dot = dotted.find('.');
  std::string_view head = dotted.substr(0, dot);
  auto it = aliases.find(head);
  if (it == aliases.end()) return std::string(dotted);
  std::string out = it->second;
  if (dot != std::string_view::npos) out.append(dotted.substr(dot));
  return out;
}

ImportTable ResolveImports(const SyntaxTree& tree) {
  ImportTable table;
  if (tree.size() == 0) return table;
  tree.Walk(tree.root(), [&](NodeId id) {
    const Node& n = tree.node(id);
    if (n.kind == NodeKind::kImport) {
      for (NodeId a : n.children) {
        const Node& alias = tree.node(a);
        table.roots.insert(RootOf(alias.value));
        if (!alias.alias.empty()) {
          table.aliases[alias.alias] = alias.value;
        } else {
          std::string head = alias.value.substr(0, alias.value.find('.'));
          table.aliases[head] = head;
        }
      }
      return false;
    }
    if (n.kind == NodeKind::kImportFrom) {
      const std::string module = std::string(n.aux, '.') + n.value;
      if (n.aux == 0) table.roots.insert(RootOf(n.value));
      for (NodeId a : n.children) {
        const Node& alias = tree.node(a);
        if (alias.value == "*") continue;
        std::string canonical = module;
        if (!canonical.empty() && canonical.back() != '.') canonical += '.';
        canonical += alias.value;
        table.aliases[alias.alias.empty() ? alias.value : alias.alias] =
            canonical;
      }
      return false;
    }
    return true;
  });
  return table;
}

bool ClassifyMlFile(const ImportTable& imports) {
  for (std::string_view lib : kMlLibraries) {
    if (imports.roots.contains(lib)) return true;
  }
  return false;
}

std::string DottedName(const SyntaxTree& tree, NodeId expr) {
  std::vector<std::string_view> parts;
  NodeId cur = expr;
  while (tree.kind(cur) == NodeKind::kAttribute) {
    parts.push_back(tree.node(cur).value);
    cur = tree.child(cur, 0);
  }
  if (tree.kind(cur) != NodeKind::kName) return {};
  std::string out = tree.node(cur).value;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    out += '.';
    out.append(*it);
  }
  return out;
}

std::string QualifiedName(const SyntaxTree& tree, NodeId expr,
                          const ImportTable& imports) {
  std::string dotted = DottedName(tree, expr);
  if (dotted.empty()) return dotted;
  return imports.Resolve(dotted);
}

}  // namespace mlsmells::pysource
