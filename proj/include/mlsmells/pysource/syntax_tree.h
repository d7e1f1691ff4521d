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

#ifndef MLSMELLS_PYSOURCE_SYNTAX_TREE_H_
#define MLSMELLS_PYSOURCE_SYNTAX_TREE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlsmells::pysource {

// Node kinds follow the CPython `ast` module closely. Child layout per kind:
//
//   Module          statements...
//   Block           statements... (aux: 0 body, 1 else, 2 finally)
//   FunctionDef     Decorator*, Arguments, [Returns], Block   value = name
//   ClassDef        Decorator*, bases/Keyword*, Block          value = name
//   Decorator       expr
//   Returns         expr
//   Arguments       Param*
//   Param           [annotation], [default]  value = name, aux = ParamFlags
//   Return          [expr]
//   Delete          targets...
//   Assign          targets..., value
//   AugAssign       target, value                value = operator ("+=")
//   AnnAssign       target, annotation, [value]
//   For             target, iter, Block, [Block(else)]  aux = 1 if async
//   While           test, Block, [Block(else)]
//   If              test, Block, [Block(else) holding If for elif]
//   With            WithItem+, Block                aux = 1 if async
//   WithItem        context, [optional_vars]
//   Raise           [exc], [cause]                 aux = RaiseFlags
//   Try             Block, ExceptHandler*, [Block(else)], [Block(finally)]
//   ExceptHandler   [type], Block                  value = bound name
//   Assert          test, [msg]
//   Import          Alias+
//   ImportFrom      Alias+          value = module, aux = relative level
//   Alias           -               value = dotted name ("*" for star),
//                                   alias = asname
//   Global/Nonlocal Name+
//   ExprStmt        expr
//   Pass/Break/Continue
//   BoolOp          operands...                    value = "and" | "or"
//   NamedExpr       target, value
//   BinOp           left, right                    value = operator
//   UnaryOp         operand                        value = operator
//   Lambda          Arguments, body
//   IfExp           body, test, orelse
//   Dict            key, value, key, value, ...   (`**m` is Starred "**"
//                                                  followed by no value)
//   Set/List/Tuple  elements...
//   ListComp/SetComp/GeneratorExp   elt, Comprehension+
//   DictComp        key, value, Comprehension+
//   Comprehension   target, iter, ifs...           aux = 1 if async
//   Await/Yield     [value]
//   YieldFrom       value
//   Compare         left, comparators...           value = ops joined by ','
//   Call            func, args... (Starred / Keyword for keywords)
//   Keyword         value-expr                     value = arg name
//   Starred         expr                           value = "*" | "**"
//   Attribute       expr                           value = attr name
//   Subscript       expr, slice (Tuple for a, b)
//   Slice           [lower], [upper], [step]       aux = SliceFlags
//   Name            -                              value = identifier
//   Constant        -                  value = literal text, aux = ConstKind
enum class NodeKind : uint8_t {
  kModule,
  kBlock,
  kFunctionDef,
  kClassDef,
  kDecorator,
  kReturns,
  kArguments,
  kParam,
  kReturn,
  kDelete,
  kAssign,
  kAugAssign,
  kAnnAssign,
  kFor,
  kWhile,
  kIf,
  kWith,
  kWithItem,
  kRaise,
  kTry,
  kExceptHandler,
  kAssert,
  kImport,
  kImportFrom,
  kAlias,
  kGlobal,
  kNonlocal,
  kExprStmt,
  kPass,
  kBreak,
  kContinue,
  kBoolOp,
  kNamedExpr,
  kBinOp,
  kUnaryOp,
  kLambda,
  kIfExp,
  kDict,
  kSet,
  kList,
  kTuple,
  kListComp,
  kSetComp,
  kGeneratorExp,
  kDictComp,
  kComprehension,
  kAwait,
  kYield,
  kYieldFrom,
  kCompare,
  kCall,
  kKeyword,
  kStarred,
  kAttribute,
  kSubscript,
  kSlice,
  kName,
  kConstant,
};

std::string_view NodeKindName(NodeKind kind);

enum ParamFlags : uint8_t {
  kParamAnnotation = 1,
  kParamDefault = 2,
  kParamVarArgs = 4,     // *args
  kParamKwArgs = 8,      // **kwargs
  kParamBareStar = 16,   // lone `*`
  kParamSlash = 32,      // positional-only marker `/`
};

enum SliceFlags : uint8_t {
  kSliceLower = 1,
  kSliceUpper = 2,
  kSliceStep = 4,
};

enum RaiseFlags : uint8_t {
  kRaiseExc = 1,
  kRaiseCause = 2,
};

enum class ConstKind : uint8_t {
  kNumber,
  kString,
  kNone,
  kTrue,
  kFalse,
  kEllipsis,
};

// Byte offsets are half-open [begin, end). Lines are 1-based, columns are
// 0-based byte columns.
struct Span {
  uint32_t begin = 0;
  uint32_t end = 0;
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

using NodeId = int32_t;
inline constexpr NodeId kNoNode = -1;

struct Node {
  NodeKind kind;
  uint8_t aux = 0;
  Span span;
  std::string value;
  std::string alias;
  std::vector<NodeId> children;

  friend bool operator==(const Node&, const Node&) = default;
};

// Arena-backed syntax tree. Node ids are assigned in creation order and the
// tree is immutable once built.
class SyntaxTree {
 public:
  SyntaxTree() = default;
  SyntaxTree(std::string source, std::vector<Node> nodes, NodeId root);

  NodeId root() const { return root_; }
  const Node& node(NodeId id) const { return nodes_[static_cast<size_t>(id)]; }
  NodeKind kind(NodeId id) const { return node(id).kind; }
  std::span<const NodeId> children(NodeId id) const {
    return node(id).children;
  }
  NodeId child(NodeId id, size_t i) const { return node(id).children[i]; }
  NodeId parent(NodeId id) const { return parents_[static_cast<size_t>(id)]; }
  size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::string_view source() const { return source_; }

  // Exact source text covered by the node.
  std::string_view Text(NodeId id) const;
  // The physical source line (without line terminator), 1-based.
  std::string_view Line(int line) const;
  int line_count() const { return static_cast<int>(line_starts_.size()); }

  // Pre-order traversal; `fn` returns false to skip a subtree.
  template <typename Fn>
  void Walk(NodeId start, Fn&& fn) const {
    std::vector<NodeId> stack{start};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      if (!fn(id)) continue;
      const auto& kids = node(id).children;
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
        stack.push_back(*it);
      }
    }
  }

  // Structural equality over kinds, spans, values and shape.
  friend bool operator==(const SyntaxTree& a, const SyntaxTree& b) {
    return a.root_ == b.root_ && a.nodes_ == b.nodes_;
  }

 private:
  std::string source_;
  std::vector<Node> nodes_;
  std::vector<NodeId> parents_;
  std::vector<uint32_t> line_starts_;
  NodeId root_ = kNoNode;
};

// Helpers for the child layouts documented above.
NodeId BodyBlock(const SyntaxTree& tree, NodeId compound);
NodeId ElseBlock(const SyntaxTree& tree, NodeId compound);
bool IsLoop(const SyntaxTree& tree, NodeId id);
bool IsScope(const SyntaxTree& tree, NodeId id);
// Innermost enclosing FunctionDef/Lambda/ClassDef/Module.
NodeId EnclosingScope(const SyntaxTree& tree, NodeId id);

}  // namespace mlsmells::pysource

#endif  // MLSMELLS_PYSOURCE_SYNTAX_TREE_H_
