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

#include "mlsmells/pysource/bindings.h"

#include <cctype>

namespace mlsmells::pysource {
namespace {

bool StartsWithUpper(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

std::string_view LastComponent(std::string_view dotted) {
  const size_t dot = dotted.rfind('.');
  return dot == std::string_view::npos ? dotted : dotted.substr(dot + 1);
}

// "torch.optim.SGD" is a direct capitalized member of "torch.optim".
bool IsCapitalizedMemberOf(const NameSet& modules, std::string_view qn) {
  const size_t dot = qn.rfind('.');
  if (dot == std::string_view::npos) return false;
  return modules.contains(qn.substr(0, dot)) &&
         StartsWithUpper(qn.substr(dot + 1));
}

bool IsSelfKey(std::string_view name) { return name.starts_with("self."); }

NodeId EnclosingClass(const SyntaxTree& tree, NodeId scope) {
  for (NodeId s = scope; s != kNoNode; s = tree.parent(s)) {
    if (tree.kind(s) == NodeKind::kClassDef) return s;
  }
  return kNoNode;
}

}  // namespace

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kUnknown:
      return "unknown";
    case Role::kDataFrame:
      return "dataframe";
    case Role::kSeries:
      return "series";
    case Role::kNdarray:
      return "ndarray";
    case Role::kTensor:
      return "tensor";
    case Role::kOptimizer:
      return "optimizer";
    case Role::kModel:
      return "model";
    case Role::kEstimator:
      return "estimator";
  }
  return "unknown";
}

RoleRules RoleRules::Defaults() {
  RoleRules r;
  r.dataframe_constructors = {
      "pandas.read_csv",   "pandas.read_table", "pandas.read_json",
      "pandas.read_excel", "pandas.read_parquet", "pandas.read_sql",
      "pandas.DataFrame",  "pandas.merge",      "pandas.concat"};
  r.series_constructors = {"pandas.Series"};
  r.ndarray_constructors = {
      "numpy.array", "numpy.asarray", "numpy.zeros",    "numpy.ones",
      "numpy.empty", "numpy.arange",  "numpy.linspace", "numpy.full",
      "numpy.eye",   "numpy.dot",     "numpy.matmul"};
  r.tensor_constructors = {
      "torch.tensor",      "torch.Tensor",     "torch.as_tensor",
      "torch.from_numpy",  "torch.zeros",      "torch.ones",
      "torch.empty",       "torch.full",       "torch.arange",
      "torch.rand",        "torch.randn",      "torch.randint",
      "torch.stack",       "torch.cat",        "torch.FloatTensor",
      "torch.LongTensor",  "tensorflow.constant", "tensorflow.Variable",
      "tensorflow.zeros",  "tensorflow.ones",  "tensorflow.convert_to_tensor"};
  r.optimizer_modules = {"torch.optim", "tensorflow.keras.optimizers",
                         "keras.optimizers"};
  r.model_constructors = {
      "tensorflow.keras.Sequential",        "tensorflow.keras.Model",
      "tensorflow.keras.models.Sequential", "tensorflow.keras.models.Model",
      "tensorflow.keras.models.load_model", "keras.Sequential",
      "keras.Model",                        "keras.models.Sequential",
      "keras.models.Model",                 "keras.models.load_model"};
  r.model_modules = {"torch.nn", "tensorflow.keras.layers", "keras.layers"};
  r.model_bases = {"torch.nn.Module", "tensorflow.keras.Model",
                   "tensorflow.keras.models.Model", "keras.Model",
                   "keras.models.Model"};
  r.estimators = {
      "LinearRegression",       "LogisticRegression",
      "Ridge",                  "Lasso",
      "ElasticNet",             "SGDClassifier",
      "SGDRegressor",           "SVC",
      "SVR",                    "LinearSVC",
      "KNeighborsClassifier",   "KNeighborsRegressor",
      "DecisionTreeClassifier", "DecisionTreeRegressor",
      "RandomForestClassifier", "RandomForestRegressor",
      "GradientBoostingClassifier", "GradientBoostingRegressor",
      "AdaBoostClassifier",     "ExtraTreesClassifier",
      "KMeans",                 "DBSCAN",
      "PCA",                    "MLPClassifier",
      "MLPRegressor",           "GaussianNB",
      "XGBClassifier",          "XGBRegressor",
      "LGBMClassifier",         "LGBMRegressor"};
  r.dataframe_methods = {
      "copy",        "merge",       "join",         "dropna",
      "fillna",      "drop",        "sort_values",  "reset_index",
      "set_index",   "drop_duplicates", "replace",  "rename",
      "head",        "tail",        "query",        "assign",
      "astype",      "groupby",     "pivot_table",  "sample",
      "apply",       "filter",      "transpose",    "append"};
  r.tensor_methods = {
      "to",        "cuda",       "cpu",       "float",    "double",
      "long",      "int",        "half",      "view",     "reshape",
      "detach",    "clone",      "contiguous", "permute", "transpose",
      "squeeze",   "unsqueeze",  "flatten",   "copy",     "astype"};
  r.model_methods = {"to", "cuda", "cpu", "train", "eval", "float",
                     "double", "half"};
  return r;
}

void BindingTable::Add(NodeId scope, std::string name, const Binding& b) {
  scopes_[scope][std::move(name)].push_back(b);
}

const Binding* BindingTable::Lookup(const SyntaxTree& tree, NodeId scope,
                                    std::string_view name,
                                    uint32_t offset) const {
  auto find = [&](NodeId s) -> const History* {
    auto it = scopes_.find(s);
    if (it == scopes_.end()) return nullptr;
    auto jt = it->second.find(name);
    return jt == it->second.end() ? nullptr : &jt->second;
  };
  if (IsSelfKey(name)) {
    // Attributes on self are shared by every method, so the final assignment
    // anywhere in the class wins.
    const NodeId cls = EnclosingClass(tree, scope);
    if (cls == kNoNode) return nullptr;
    const History* h = find(cls);
    return h == nullptr ? nullptr : &h->back();
  }
  if (const History* h = find(scope)) {
    const Binding* best = nullptr;
    for (const Binding& b : *h) {
      if (b.visible_from <= offset) best = &b;
    }
    return best;
  }
  // Free variable: the final state of the nearest enclosing function or the
  // module. Class bodies are not visible from their methods.
  for (NodeId s = scope; s != tree.root();) {
    s = EnclosingScope(tree, s);
    if (tree.kind(s) == NodeKind::kClassDef) continue;
    if (const History* h = find(s)) return &h->back();
  }
  return nullptr;
}

Role BindingTable::RoleAt(const SyntaxTree& tree, NodeId scope,
                          std::string_view name, uint32_t offset) const {
  const Binding* b = Lookup(tree, scope, name, offset);
  return b == nullptr ? Role::kUnknown : b->role;
}

std::map<std::string, Binding, std::less<>> BindingTable::Snapshot(
    NodeId scope) const {
  std::map<std::string, Binding, std::less<>> out;
  auto it = scopes_.find(scope);
  if (it == scopes_.end()) return out;
  for (const auto& [name, history] : it->second) out[name] = history.back();
  return out;
}

RoleInference::RoleInference(const SyntaxTree& tree,
                             const ImportTable& imports,
                             const BindingTable& bindings,
                             const RoleRules& rules)
    : tree_(tree), imports_(imports), bindings_(bindings), rules_(rules) {
  if (tree.size() == 0) return;
  // Pre-order visits classes in textual order, so a subclass of a local model
  // class is recognized when it follows its base.
  tree.Walk(tree.root(), [&](NodeId id) {
    if (tree.kind(id) != NodeKind::kClassDef) return true;
    for (NodeId c : tree.children(id)) {
      const NodeKind k = tree.kind(c);
      if (k == NodeKind::kDecorator || k == NodeKind::kKeyword ||
          k == NodeKind::kBlock) {
        continue;
      }
      const std::string qn = QualifiedName(tree, c, imports);
      if (rules.model_bases.contains(qn) || model_classes_.contains(qn)) {
        model_classes_.insert(tree.node(id).value);
        break;
      }
    }
    return true;
  });
}

Role RoleInference::RoleOfName(NodeId expr) const {
  const std::string dotted = DottedName(tree_, expr);
  if (dotted.empty()) return Role::kUnknown;
  return bindings_.RoleAt(tree_, EnclosingScope(tree_, expr), dotted,
                          tree_.node(expr).span.begin);
}

Role RoleInference::RoleOf(NodeId expr) const {
  if (expr == kNoNode) return Role::kUnknown;
  const Node& n = tree_.node(expr);
  switch (n.kind) {
    case NodeKind::kName:
      return RoleOfName(expr);
    case NodeKind::kAttribute: {
      const Role bound = RoleOfName(expr);
      if (bound != Role::kUnknown) return bound;
      const Role base = RoleOf(n.children[0]);
      if (base == Role::kDataFrame) {
        if (n.value == "loc" || n.value == "iloc" || n.value == "at" ||
            n.value == "iat" || n.value == "T") {
          return Role::kDataFrame;
        }
        if (n.value == "values") return Role::kNdarray;
      }
      if (base == Role::kTensor && (n.value == "data" || n.value == "T")) {
        return Role::kTensor;
      }
      return Role::kUnknown;
    }
    case NodeKind::kSubscript: {
      const Role base = RoleOf(n.children[0]);
      switch (base) {
        case Role::kDataFrame:
        case Role::kSeries:
        case Role::kNdarray:
        case Role::kTensor:
          return base;
        default:
          return Role::kUnknown;
      }
    }
    case NodeKind::kCall:
      return RoleOfCall(expr);
    case NodeKind::kBinOp: {
      const Role l = RoleOf(n.children[0]);
      const Role r = RoleOf(n.children[1]);
      for (Role want : {Role::kTensor, Role::kNdarray, Role::kDataFrame}) {
        if (l == want || r == want) return want;
      }
      return Role::kUnknown;
    }
    case NodeKind::kIfExp: {
      const Role a = RoleOf(n.children[0]);
      return a == RoleOf(n.children[2]) ? a : Role::kUnknown;
    }
    case NodeKind::kAwait:
      return n.children.empty() ? Role::kUnknown : RoleOf(n.children[0]);
    default:
      return Role::kUnknown;
  }
}

Role RoleInference::ConstructedRole(NodeId call) const {
  const NodeId func = tree_.child(call, 0);
  const std::string dotted = DottedName(tree_, func);
  if (dotted.empty()) return Role::kUnknown;
  const std::string qn = imports_.Resolve(dotted);
  if (rules_.dataframe_constructors.contains(qn)) return Role::kDataFrame;
  if (rules_.series_constructors.contains(qn)) return Role::kSeries;
  if (rules_.ndarray_constructors.contains(qn)) return Role::kNdarray;
  if (rules_.tensor_constructors.contains(qn)) return Role::kTensor;
  if (IsCapitalizedMemberOf(rules_.optimizer_modules, qn)) {
    return Role::kOptimizer;
  }
  if (rules_.model_constructors.contains(qn) ||
      IsCapitalizedMemberOf(rules_.model_modules, qn) ||
      model_classes_.contains(qn)) {
    return Role::kModel;
  }
  // Estimators must come from an import, so a local class that happens to
  // share a name is not mistaken for one.
  const std::string_view head =
      std::string_view(dotted).substr(0, dotted.find('.'));
  if (rules_.estimators.contains(LastComponent(qn)) &&
      imports_.aliases.contains(head)) {
    return Role::kEstimator;
  }
  return Role::kUnknown;
}

Role RoleInference::RoleOfCall(NodeId call) const {
  if (const Role r = ConstructedRole(call); r != Role::kUnknown) return r;
  const NodeId func = tree_.child(call, 0);
  if (tree_.kind(func) != NodeKind::kAttribute) return Role::kUnknown;
  const std::string& method = tree_.node(func).value;
  const Role recv = RoleOf(tree_.child(func, 0));
  switch (recv) {
    case Role::kDataFrame:
      if (rules_.dataframe_methods.contains(method)) return Role::kDataFrame;
      if (method == "to_numpy") return Role::kNdarray;
      return Role::kUnknown;
    case Role::kTensor:
    case Role::kNdarray:
      return rules_.tensor_methods.contains(method) ? recv : Role::kUnknown;
    case Role::kModel:
      return rules_.model_methods.contains(method) ? Role::kModel
                                                   : Role::kUnknown;
    default:
      return Role::kUnknown;
  }
}

namespace {

class Binder {
 public:
  Binder(const SyntaxTree& tree, const ImportTable& imports,
         const RoleRules& rules)
      : tree_(tree), infer_(tree, imports, table_, rules) {}

  BindingTable Run() {
    if (tree_.size() == 0) return std::move(table_);
    tree_.Walk(tree_.root(), [&](NodeId id) {
      Visit(id);
      return true;
    });
    return std::move(table_);
  }

 private:
  void Visit(NodeId id) {
    const Node& n = tree_.node(id);
    switch (n.kind) {
      case NodeKind::kFunctionDef:
      case NodeKind::kLambda:
        BindParams(id);
        break;
      case NodeKind::kAssign: {
        const NodeId value = n.children.back();
        for (size_t i = 0; i + 1 < n.children.size(); ++i) {
          Bind(n.children[i], value, id, n.span.end);
        }
        break;
      }
      case NodeKind::kAnnAssign:
        if (n.children.size() == 3) {
          Bind(n.children[0], n.children[2], id, n.span.end);
        }
        break;
      case NodeKind::kNamedExpr:
        Bind(n.children[0], n.children[1], id, n.span.end);
        break;
      case NodeKind::kFor:
        Bind(n.children[0], kNoNode, id, tree_.node(n.children[1]).span.end);
        break;
      case NodeKind::kWithItem:
        if (n.children.size() == 2) {
          Bind(n.children[1], kNoNode, id, n.span.end);
        }
        break;
      default:
        break;
    }
  }

  void BindParams(NodeId fn) {
    for (NodeId c : tree_.children(fn)) {
      if (tree_.kind(c) != NodeKind::kArguments) continue;
      for (NodeId p : tree_.children(c)) {
        const Node& param = tree_.node(p);
        if (param.value.empty()) continue;
        table_.Add(fn, param.value,
                   {Role::kUnknown, p, param.span.line,
                    tree_.node(fn).span.begin});
      }
    }
  }

  // Binds `target` to the role of `value` (unknown when absent).
  void Bind(NodeId target, NodeId value, NodeId site, uint32_t visible_from) {
    const NodeKind k = tree_.kind(target);
    if (k == NodeKind::kTuple || k == NodeKind::kList) {
      const auto elts = tree_.children(target);
      const bool pairwise =
          value != kNoNode &&
          (tree_.kind(value) == NodeKind::kTuple ||
           tree_.kind(value) == NodeKind::kList) &&
          tree_.children(value).size() == elts.size();
      for (size_t i = 0; i < elts.size(); ++i) {
        Bind(elts[i], pairwise ? tree_.child(value, i) : kNoNode, site,
             visible_from);
      }
      return;
    }
    if (k == NodeKind::kStarred) {
      Bind(tree_.child(target, 0), kNoNode, site, visible_from);
      return;
    }
    std::string key = DottedName(tree_, target);
    if (key.empty()) return;
    const Role role = infer_.RoleOf(value);
    NodeId scope = EnclosingScope(tree_, site);
    if (IsSelfKey(key)) {
      scope = EnclosingClass(tree_, scope);
      if (scope == kNoNode) return;
    }
    table_.Add(scope, std::move(key),
               {role, site, tree_.node(site).span.line, visible_from});
  }

  const SyntaxTree& tree_;
  BindingTable table_;
  RoleInference infer_;
};

}  // namespace

BindingTable BindVariables(const SyntaxTree& tree, const ImportTable& imports,
                           const RoleRules& rules) {
  return Binder(tree, imports, rules).Run();
}

}  // namespace mlsmells::pysource
