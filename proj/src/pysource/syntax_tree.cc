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

#include "mlsmells/pysource/syntax_tree.h"

#include <utility>

namespace mlsmells::pysource {

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kModule: return "Module";
    case NodeKind::kBlock: return "Block";
    case NodeKind::kFunctionDef: return "FunctionDef";
    case NodeKind::kClassDef: return "ClassDef";
    case NodeKind::kDecorator: return "Decorator";
    case NodeKind::kReturns: return "Returns";
    case NodeKind::kArguments: return "Arguments";
    case NodeKind::kParam: return "Param";
    case NodeKind::kReturn: return "Return";
    case NodeKind::kDelete: return "Delete";
    case NodeKind::kAssign: return "Assign";
    case NodeKind::kAugAssign: return "AugAssign";
    case NodeKind::kAnnAssign: return "AnnAssign";
    case NodeKind::kFor: return "For";
    case NodeKind::kWhile: return "While";
    case NodeKind::kIf: return "If";
    case NodeKind::kWith: return "With";
    case NodeKind::kWithItem: return "WithItem";
    case NodeKind::kRaise: return "Raise";
    case NodeKind::kTry: return "Try";
    case NodeKind::kExceptHandler: return "ExceptHandler";
    case NodeKind::kAssert: return "Assert";
    case NodeKind::kImport: return "Import";
    case NodeKind::kImportFrom: return "ImportFrom";
    case NodeKind::kAlias: return "Alias";
    case NodeKind::kGlobal: return "Global";
    case NodeKind::kNonlocal: return "Nonlocal";
    case NodeKind::kExprStmt: return "ExprStmt";
    case NodeKind::kPass: return "Pass";
    case NodeKind::kBreak: return "Break";
    case NodeKind::kContinue: return "Continue";
    case NodeKind::kBoolOp: return "BoolOp";
    case NodeKind::kNamedExpr: return "NamedExpr";
    case NodeKind::kBinOp: return "BinOp";
    case NodeKind::kUnaryOp: return "UnaryOp";
    case NodeKind::kLambda: return "Lambda";
    case NodeKind::kIfExp: return "IfExp";
    case NodeKind::kDict: return "Dict";
    case NodeKind::kSet: return "Set";
    case NodeKind::kList: return "List";
    case NodeKind::kTuple: return "Tuple";
    case NodeKind::kListComp: return "ListComp";
    case NodeKind::kSetComp: return "SetComp";
    case NodeKind::kGeneratorExp: return "GeneratorExp";
    case NodeKind::kDictComp: return "DictComp";
    case NodeKind::kComprehension: return "Comprehension";
    case NodeKind::kAwait: return "Await";
    case NodeKind::kYield: return "Yield";
    case NodeKind::kYieldFrom: return "YieldFrom";
    case NodeKind::kCompare: return "Compare";
    case NodeKind::kCall: return "Call";
    case NodeKind::kKeyword: return "Keyword";
    case NodeKind::kStarred: return "Starred";
    case NodeKind::kAttribute: return "Attribute";
    case NodeKind::kSubscript: return "Subscript";
    case NodeKind::kSlice: return "Slice";
    case NodeKind::kName: return "Name";
    case NodeKind::kConstant: return "Constant";
  }
  return "?";
}

SyntaxTree::SyntaxTree(std::string source, std::vector<Node> nodes,
                       NodeId root)
    : source_(std::move(source)), nodes_(std::move(nodes)), root_(root) {
  parents_.assign(nodes_.size(), kNoNode);
  for (size_t i = 0; i < nodes_.size(); ++i) {
    for (NodeId c : nodes_[i].children) {
      parents_[static_cast<size_t>(c)] = static_cast<NodeId>(i);
    }
  }
  line_starts_.push_back(0);
  for (size_t i = 0; i < source_.size(); ++i) {
    if (source_[i] == '\n' && i + 1 < source_.size()) {
      line_starts_.push_back(static_cast<uint32_t>(i + 1));
    }
  }
  if (source_.empty()) line_starts_.clear();
}

std::string_view SyntaxTree::Text(NodeId id) const {
  const Span& s = node(id).span;
  return std::string_view(source_).substr(s.begin, s.end - s.begin);
}

std::string_view SyntaxTree::Line(int line) const {
  if (line < 1 || line > line_count()) return {};
  const size_t b = line_starts_[static_cast<size_t>(line - 1)];
  size_t e = b;
  while (e < source_.size() && source_[e] != '\n') ++e;
  if (e > b && source_[e - 1] == '\r') --e;
  return std::string_view(source_).substr(b, e - b);
}

NodeId BodyBlock(const SyntaxTree& tree, NodeId compound) {
  for (NodeId c : tree.children(compound)) {
    if (tree.kind(c) == NodeKind::kBlock && tree.node(c).aux == 0) return c;
  }
  return kNoNode;
}

NodeId ElseBlock(const SyntaxTree& tree, NodeId compound) {
  for (NodeId c : tree.children(compound)) {
    if (tree.kind(c) == NodeKind::kBlock && tree.node(c).aux == 1) return c;
  }
  return kNoNode;
}

bool IsLoop(const SyntaxTree& tree, NodeId id) {
  const NodeKind k = tree.kind(id);
  return k == NodeKind::kFor || k == NodeKind::kWhile;
}

bool IsScope(const SyntaxTree& tree, NodeId id) {
  const NodeKind k = tree.kind(id);
  return k == NodeKind::kModule || k == NodeKind::kFunctionDef ||
         k == NodeKind::kClassDef || k == NodeKind::kLambda;
}

NodeId EnclosingScope(const SyntaxTree& tree, NodeId id) {
  for (NodeId p = tree.parent(id); p != kNoNode; p = tree.parent(p)) {
    if (IsScope(tree, p)) return p;
  }
  return tree.root();
}

}  // namespace mlsmells::pysource
