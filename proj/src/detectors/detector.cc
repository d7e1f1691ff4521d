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

#include "mlsmells/detectors/detector.h"

#include <algorithm>
#include <exception>

#include "fmt/core.h"
#include "mlsmells/pysource/parser.h"

namespace mlsmells {
namespace {

using pysource::NodeId;
using pysource::NodeKind;
using pysource::kNoNode;
using pysource::Role;
using pysource::SyntaxTree;

// ---- Call helpers ---------------------------------------------------------

struct CallArgs {
  int positional = 0;
  bool star_args = false;
  bool star_kwargs = false;
  std::vector<std::string_view> keywords;
  std::vector<NodeId> keyword_values;

  bool HasKeyword(const NameSet& names) const {
    for (auto k : keywords) {
      if (names.contains(k)) return true;
    }
    return false;
  }
  NodeId KeywordValue(std::string_view name) const {
    for (size_t i = 0; i < keywords.size(); ++i) {
      if (keywords[i] == name) return keyword_values[i];
    }
    return kNoNode;
  }
  int total() const { return positional + static_cast<int>(keywords.size()); }
};

CallArgs ArgsOf(const SyntaxTree& tree, NodeId call) {
  CallArgs a;
  const auto kids = tree.children(call);
  for (size_t i = 1; i < kids.size(); ++i) {
    const pysource::Node& n = tree.node(kids[i]);
    if (n.kind == NodeKind::kKeyword) {
      a.keywords.push_back(n.value);
      a.keyword_values.push_back(n.children[0]);
    } else if (n.kind == NodeKind::kStarred) {
      (n.value == "**" ? a.star_kwargs : a.star_args) = true;
    } else {
      ++a.positional;
    }
  }
  return a;
}

// Method name of `recv.method(...)`, or empty.
std::string_view MethodName(const SyntaxTree& tree, NodeId call) {
  const NodeId func = tree.child(call, 0);
  if (tree.kind(func) != NodeKind::kAttribute) return {};
  return tree.node(func).value;
}

NodeId Receiver(const SyntaxTree& tree, NodeId call) {
  return tree.child(tree.child(call, 0), 0);
}

std::string_view LastComponent(std::string_view dotted) {
  const size_t dot = dotted.rfind('.');
  return dot == std::string_view::npos ? dotted : dotted.substr(dot + 1);
}

// Callee resolved through imports, provided its head really is an import.
std::string ImportedCallee(const RuleContext& ctx, NodeId call) {
  const std::string dotted = pysource::DottedName(ctx.tree, ctx.tree.child(call, 0));
  if (dotted.empty()) return {};
  const std::string_view head =
      std::string_view(dotted).substr(0, dotted.find('.'));
  if (!ctx.imports.aliases.contains(head)) return {};
  return ctx.imports.Resolve(dotted);
}

// Pre-order walk over a subtree that does not enter nested function or class
// bodies, since those run at another time than the enclosing code.
template <typename Fn>
void WalkLocal(const SyntaxTree& tree, NodeId start, Fn&& fn) {
  tree.Walk(start, [&](NodeId id) {
    if (id != start && pysource::IsScope(tree, id)) return false;
    fn(id);
    return true;
  });
}

template <typename Fn>
void ForEachOfKind(const SyntaxTree& tree, NodeKind kind, Fn&& fn) {
  for (size_t i = 0; i < tree.size(); ++i) {
    const auto id = static_cast<NodeId>(i);
    if (tree.kind(id) == kind) fn(id);
  }
}

// Innermost loop whose body contains `id`, without crossing a scope.
NodeId EnclosingLoop(const SyntaxTree& tree, NodeId id) {
  NodeId child = id;
  for (NodeId p = tree.parent(id); p != kNoNode; child = p, p = tree.parent(p)) {
    if (pysource::IsScope(tree, p)) return kNoNode;
    if (pysource::IsLoop(tree, p) && child == pysource::BodyBlock(tree, p)) {
      return p;
    }
  }
  return kNoNode;
}

bool IsName(const SyntaxTree& tree, NodeId id, std::string_view name) {
  return tree.kind(id) == NodeKind::kName && tree.node(id).value == name;
}

bool IsFrameRole(Role r) { return r == Role::kDataFrame; }

// ---- Rules ----------------------------------------------------------------

// 1. Row-by-row iteration over a dataframe or element-wise tensor indexing.
void UnnecessaryIteration(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  ForEachOfKind(t, NodeKind::kFor, [&](NodeId loop) {
    const NodeId target = t.child(loop, 0);
    const NodeId iter = t.child(loop, 1);
    if (t.kind(iter) == NodeKind::kCall &&
        ctx.config.iteration_methods.contains(MethodName(t, iter)) &&
        IsFrameRole(ctx.roles.RoleOf(Receiver(t, iter)))) {
      out.push_back({loop});
      return;
    }
    if (t.kind(target) != NodeKind::kName) return;
    // Only positional iteration counts; looping over column names and
    // indexing by them is idiomatic.
    bool positional = false;
    if (t.kind(iter) == NodeKind::kCall) {
      positional = IsName(t, t.child(iter, 0), "range");
    } else if (t.kind(iter) == NodeKind::kAttribute &&
               t.node(iter).value == "index") {
      positional = IsFrameRole(ctx.roles.RoleOf(t.child(iter, 0)));
    }
    if (!positional) return;
    const std::string& var = t.node(target).value;
    bool hit = false;
    WalkLocal(t, pysource::BodyBlock(t, loop), [&](NodeId id) {
      if (hit || t.kind(id) != NodeKind::kSubscript) return;
      const NodeId slice = t.child(id, 1);
      bool uses = IsName(t, slice, var);
      if (!uses && t.kind(slice) == NodeKind::kTuple) {
        for (NodeId e : t.children(slice)) uses = uses || IsName(t, e, var);
      }
      if (!uses) return;
      const Role base = ctx.roles.RoleOf(t.child(id, 0));
      hit = base == Role::kDataFrame || base == Role::kTensor;
    });
    if (hit) out.push_back({loop});
  });
}

// 2. `x == np.nan` is always False.
void NanEquivalence(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  ForEachOfKind(t, NodeKind::kCompare, [&](NodeId cmp) {
    const std::string& ops = t.node(cmp).value;
    const auto kids = t.children(cmp);
    // ops[i] joins operand i and i+1.
    size_t i = 0, start = 0;
    while (start <= ops.size()) {
      size_t comma = ops.find(',', start);
      if (comma == std::string::npos) comma = ops.size();
      const std::string_view op(ops.data() + start, comma - start);
      if (op == "==" || op == "!=") {
        for (NodeId side : {kids[i], kids[i + 1]}) {
          const std::string qn =
              pysource::QualifiedName(t, side, ctx.imports);
          if (ctx.config.nan_constants.contains(qn)) {
            out.push_back({cmp});
            return;
          }
        }
      }
      ++i;
      start = comma + 1;
    }
  });
}

// 3. df["a"]["b"]: a subscript over a subscript of a dataframe.
void ChainIndexing(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  auto qualifies = [&](NodeId sub) {
    const NodeId inner = t.child(sub, 0);
    return t.kind(inner) == NodeKind::kSubscript &&
           IsFrameRole(ctx.roles.RoleOf(t.child(inner, 0)));
  };
  ForEachOfKind(t, NodeKind::kSubscript, [&](NodeId sub) {
    if (!qualifies(sub)) return;
    const NodeId parent = t.parent(sub);
    if (t.kind(parent) == NodeKind::kSubscript && t.child(parent, 0) == sub &&
        qualifies(parent)) {
      return;  // reported at the outermost subscript
    }
    out.push_back({sub});
  });
}

// 4. read_csv without dtype/usecols.
void ColumnsDtypeNotSet(const RuleContext& ctx, std::vector<RuleHit>& out) {
  ForEachOfKind(ctx.tree, NodeKind::kCall, [&](NodeId call) {
    if (!ctx.config.read_csv_functions.contains(ImportedCallee(ctx, call))) {
      return;
    }
    const CallArgs args = ArgsOf(ctx.tree, call);
    if (args.star_kwargs || args.HasKeyword(ctx.config.dtype_keywords)) return;
    out.push_back({call});
  });
}

bool IsEmptyFill(const SyntaxTree& t, NodeId value) {
  if (t.kind(value) != NodeKind::kConstant) return false;
  const pysource::Node& n = t.node(value);
  const std::string_view text = t.Text(value);
  if (n.aux == static_cast<uint8_t>(pysource::ConstKind::kNumber)) {
    return text == "0";
  }
  if (n.aux == static_cast<uint8_t>(pysource::ConstKind::kString)) {
    return text == "\"\"" || text == "''";
  }
  return false;
}

// 5. df["new"] = 0 / "" instead of NaN.
void EmptyColumnMisinit(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  ForEachOfKind(t, NodeKind::kAssign, [&](NodeId assign) {
    const auto kids = t.children(assign);
    if (!IsEmptyFill(t, kids.back())) return;
    for (size_t i = 0; i + 1 < kids.size(); ++i) {
      const NodeId target = kids[i];
      if (t.kind(target) != NodeKind::kSubscript) continue;
      const NodeId key = t.child(target, 1);
      if (t.kind(key) != NodeKind::kConstant ||
          t.node(key).aux != static_cast<uint8_t>(pysource::ConstKind::kString)) {
        continue;
      }
      if (IsFrameRole(ctx.roles.RoleOf(t.child(target, 0)))) {
        out.push_back({assign});
        return;
      }
    }
  });
}

// 6. merge without explicit how/on.
void MergeParamsNotSet(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  ForEachOfKind(t, NodeKind::kCall, [&](NodeId call) {
    const bool method = MethodName(t, call) == "merge" &&
                        IsFrameRole(ctx.roles.RoleOf(Receiver(t, call)));
    const bool function = ImportedCallee(ctx, call) == "pandas.merge";
    if (!method && !function) return;
    const CallArgs args = ArgsOf(t, call);
    if (args.star_kwargs) return;
    if (args.HasKeyword(ctx.config.merge_how_keywords) &&
        args.HasKeyword(ctx.config.merge_on_keywords)) {
      return;
    }
    out.push_back({call});
  });
}

// 7. df.dropna() as a statement: the result is thrown away.
void InplaceApiMisused(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  ForEachOfKind(t, NodeKind::kExprStmt, [&](NodeId stmt) {
    const NodeId call = t.child(stmt, 0);
    if (t.kind(call) != NodeKind::kCall) return;
    if (!ctx.config.inplace_methods.contains(MethodName(t, call))) return;
    const Role recv = ctx.roles.RoleOf(Receiver(t, call));
    if (recv != Role::kDataFrame && recv != Role::kSeries) return;
    const CallArgs args = ArgsOf(t, call);
    if (args.star_kwargs) return;
    const NodeId inplace = args.KeywordValue("inplace");
    if (inplace != kNoNode && t.Text(inplace) == "True") return;
    out.push_back({call});
  });
}

// 8. df.values instead of df.to_numpy().
void DataframeConversion(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  ForEachOfKind(t, NodeKind::kAttribute, [&](NodeId attr) {
    if (t.node(attr).value != "values") return;
    if (IsFrameRole(ctx.roles.RoleOf(t.child(attr, 0)))) out.push_back({attr});
  });
}

// 9. np.dot(a, b) for matrix products.
void MatmulApiMisused(const RuleContext& ctx, std::vector<RuleHit>& out) {
  ForEachOfKind(ctx.tree, NodeKind::kCall, [&](NodeId call) {
    if (!ctx.config.matmul_functions.contains(ImportedCallee(ctx, call))) {
      return;
    }
    const CallArgs args = ArgsOf(ctx.tree, call);
    if (args.positional == 2 && args.keywords.empty() && !args.star_args) {
      out.push_back({call});
    }
  });
}

// 10. backward() in a loop with no earlier zero_grad() in that loop.
void GradientsNotCleared(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  ForEachOfKind(t, NodeKind::kCall, [&](NodeId call) {
    if (!ctx.config.backward_methods.contains(MethodName(t, call))) return;
    const NodeId loop = EnclosingLoop(t, call);
    if (loop == kNoNode) return;
    const uint32_t at = t.node(call).span.begin;
    bool cleared = false;
    WalkLocal(t, pysource::BodyBlock(t, loop), [&](NodeId id) {
      if (cleared || t.kind(id) != NodeKind::kCall) return;
      if (t.node(id).span.begin < at &&
          ctx.config.clear_grad_methods.contains(MethodName(t, id))) {
        cleared = true;
      }
    });
    if (!cleared) out.push_back({call});
  });
}

// 11. Models built inside a loop without releasing memory.
void MemoryNotFreed(const RuleContext& ctx, std::vector<RuleHit>& out) {
  const SyntaxTree& t = ctx.tree;
  ForEachOfKind(t, NodeKind::kCall, [&](NodeId call) {
    if (ctx.roles.ConstructedRole(call) != Role::kModel) return;
    const NodeId loop = EnclosingLoop(t, call);
    if (loop == kNoNode) return;
    bool freed = false;
    WalkLocal(t, pysource::BodyBlock(t, loop), [&](NodeId id) {
      if (freed) return;
      if (t.kind(id) == NodeKind::kDelete) {
        freed = true;
      } else if (t.kind(id) == NodeKind::kCall) {
        const std::string dotted = pysource::DottedName(t, t.child(id, 0));
        freed = ctx.config.memory_free_calls.contains(LastComponent(dotted));
      }
    });
    if (!freed) out.push_back({loop});
  });
}

// 12. Estimators and optimizers built on library defaults.
void HyperparametersNotSet(const RuleContext& ctx, std::vector<RuleHit>& out) {
  ForEachOfKind(ctx.tree, NodeKind::kCall, [&](NodeId call) {
    const Role role = ctx.roles.ConstructedRole(call);
    const CallArgs args = ArgsOf(ctx.tree, call);
    if (args.star_args || args.star_kwargs) return;
    // Estimators: any argument sets a hyperparameter (KMeans(8) is explicit).
    // Optimizers: the first positional argument is the parameter list.
    if ((role == Role::kEstimator && args.total() == 0) ||
        (role == Role::kOptimizer && args.keywords.empty() &&
         args.positional <= 1)) {
      out.push_back({call});
    }
  });
}

bool AnyCall(const RuleContext& ctx,
             const std::function<bool(NodeId, const std::string&)>& pred) {
  const SyntaxTree& t = ctx.tree;
  for (size_t i = 0; i < t.size(); ++i) {
    const auto id = static_cast<NodeId>(i);
    if (t.kind(id) != NodeKind::kCall) continue;
    if (pred(id, pysource::DottedName(t, t.child(id, 0)))) return true;
  }
  return false;
}

// 13. torch training without use_deterministic_algorithms.
void DeterministicOptionNotUsed(const RuleContext& ctx,
                                std::vector<RuleHit>& out) {
  if (!ctx.imports.roots.contains("torch")) return;
  const bool backward = AnyCall(ctx, [&](NodeId call, const std::string&) {
    return ctx.config.backward_methods.contains(MethodName(ctx.tree, call));
  });
  if (!backward) return;
  const bool deterministic = AnyCall(ctx, [&](NodeId, const std::string& d) {
    return !d.empty() && ctx.config.deterministic_calls.contains(LastComponent(d));
  });
  if (!deterministic) out.push_back({kNoNode, true});
}

// 14. Random APIs used without any seeding.
void RandomnessUncontrolled(const RuleContext& ctx, std::vector<RuleHit>& out) {
  bool random = false;
  bool seeded = false;
  ForEachOfKind(ctx.tree, NodeKind::kCall, [&](NodeId call) {
    const std::string qn = ImportedCallee(ctx, call);
    if (qn.empty()) return;
    if (ctx.config.seed_calls.contains(qn)) {
      seeded = true;
      return;
    }
    for (const auto& prefix : ctx.config.random_prefixes) {
      if (qn.starts_with(prefix)) random = true;
    }
  });
  if (random && !seeded) out.push_back({kNoNode, true});
}

const Rule kRules[] = {
    {"unnecessary-iteration", UnnecessaryIteration},
    {"nan-equivalence-misused", NanEquivalence},
    {"chain-indexing", ChainIndexing},
    {"columns-dtype-not-set", ColumnsDtypeNotSet},
    {"empty-column-misinit", EmptyColumnMisinit},
    {"merge-params-not-set", MergeParamsNotSet},
    {"inplace-api-misused", InplaceApiMisused},
    {"dataframe-conversion-misused", DataframeConversion},
    {"matmul-api-misused", MatmulApiMisused},
    {"gradients-not-cleared", GradientsNotCleared},
    {"memory-not-freed", MemoryNotFreed},
    {"hyperparameters-not-set", HyperparametersNotSet},
    {"deterministic-option-not-used", DeterministicOptionNotUsed},
    {"randomness-uncontrolled", RandomnessUncontrolled},
};

std::string TrimRight(std::string_view s) {
  const size_t end = s.find_last_not_of(" \t\r");
  return std::string(end == std::string_view::npos ? "" : s.substr(0, end + 1));
}

// `for x in y:` up to and including the header colon, so trailing comments
// and the body stay out of the snippet.
std::string_view LoopHeader(const SyntaxTree& tree, NodeId loop) {
  const NodeId last = tree.child(loop, tree.kind(loop) == NodeKind::kFor ? 1 : 0);
  const std::string_view src = tree.source();
  const uint32_t begin = tree.node(loop).span.begin;
  size_t colon = src.find(':', tree.node(last).span.end);
  if (colon == std::string_view::npos) colon = tree.node(last).span.end - 1;
  return src.substr(begin, colon + 1 - begin);
}

}  // namespace

std::span<const Rule> DefaultRules() { return kRules; }

FileDetection DetectFile(const SyntaxTree& tree,
                         const pysource::ImportTable& imports,
                         const pysource::BindingTable& bindings,
                         const DetectorConfig& config, std::string_view file) {
  return DetectFile(tree, imports, bindings, config, file, DefaultRules());
}

FileDetection DetectFile(const SyntaxTree& tree,
                         const pysource::ImportTable& imports,
                         const pysource::BindingTable& bindings,
                         const DetectorConfig& config, std::string_view file,
                         std::span<const Rule> rules) {
  FileDetection result;
  if (tree.size() == 0) return result;
  const pysource::RoleInference roles(tree, imports, bindings, config.roles);
  const RuleContext ctx{tree, imports, bindings, roles, config};
  for (const Rule& rule : rules) {
    if (!config.Enabled(rule.kind)) continue;
    std::vector<RuleHit> hits;
    try {
      rule.run(ctx, hits);
    } catch (const std::exception& e) {
      result.diagnostics.push_back(
          fmt::format("{}: rule {} failed: {}", file, rule.kind, e.what()));
      continue;
    }
    const SmellScope scope = FindKind(rule.kind) != nullptr
                                 ? FindKind(rule.kind)->scope
                                 : SmellScope::kExpression;
    for (const RuleHit& hit : hits) {
      SmellInstance inst;
      inst.kind = std::string(rule.kind);
      inst.file = std::string(file);
      if (hit.file_scope || hit.node == kNoNode) {
        inst.line = 1;
        inst.snippet = TrimRight(tree.Line(1));
      } else {
        inst.line = tree.node(hit.node).span.line;
        const std::string_view text = tree.Text(hit.node);
        if (scope == SmellScope::kLoop && pysource::IsLoop(tree, hit.node)) {
          inst.snippet = std::string(LoopHeader(tree, hit.node));
        } else {
          inst.snippet = std::string(text);
        }
      }
      result.instances.push_back(std::move(inst));
    }
  }
  std::sort(result.instances.begin(), result.instances.end(),
            [](const SmellInstance& a, const SmellInstance& b) {
              return std::tie(a.line, a.kind) < std::tie(b.line, b.kind);
            });
  result.instances.erase(
      std::unique(result.instances.begin(), result.instances.end(),
                  [](const SmellInstance& a, const SmellInstance& b) {
                    return a.line == b.line && a.kind == b.kind;
                  }),
      result.instances.end());
  return result;
}

AnalyzedFile AnalyzeSource(const pysource::SourceFile& file,
                           const DetectorConfig& config) {
  AnalyzedFile out;
  out.path = file.path;
  out.loc = file.loc;
  auto parsed = pysource::ParseSource(file.content);
  if (!parsed.ok()) {
    out.parse_error = parsed.error();
    return out;
  }
  const SyntaxTree& tree = *parsed;
  const pysource::ImportTable imports = pysource::ResolveImports(tree);
  out.ml = pysource::ClassifyMlFile(imports);
  if (!out.ml) return out;
  const pysource::BindingTable bindings =
      pysource::BindVariables(tree, imports, config.roles);
  FileDetection d = DetectFile(tree, imports, bindings, config, file.path);
  out.instances = std::move(d.instances);
  out.diagnostics = std::move(d.diagnostics);
  return out;
}

}  // namespace mlsmells
